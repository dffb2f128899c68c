"""
Numerical Rules Configuration

Contains tolerance constants, output schemas and exit codes shared across services
and commands. These values define the accuracy contracts of the lab.
"""

import math

# Tolerances
TOLERANCES = {
    'HERMITIAN': 1e-10,
    'TRACE': 1e-10,
    'PSD_CLAMP': 1e-9,
    'EIGEN_FLOOR': 1e-14,
    'UNIT_NORM': 1e-12,
    'VARIANCE_CLAMP': 1e-10,
    'STATIONARY_RATE': 1e-12,
    'CONCURRENCE_ZERO': 1e-9,
    'PPT': 1e-9,
    'NUMERIC_ORTHOGONAL': 1e-8,
    'ORTHOGONAL_SCAN': 1e-3,
    'CONSTRAINT': 1e-10,
    'SEPARABLE_CEILING': 0.5 + 1e-6,
}

# Family parameter ranges
FAMILY_RANGES = {
    'werner': (0.0, 1.0),
    'gisin': (0.0, 1.0),
    'rho3': (0.0, 1.0),
    'product_mixture': (0.0, 1.0),
    'pure_phi': (0.0, 1.0),
    'pure_ent': (0.0, math.pi / 2),
}

SAMPLER_TERMS_RANGE = (1, 16)

# CSV schemas
CSV_SCHEMAS = {
    'survey': [
        'seed', 'index', 'num_terms', 'mutual_info', 'entropy_ab', 'entropy_a',
        'entropy_b', 'd_quarter', 'd_half', 'd_dif', 'theta_a', 'phi_a',
        'theta_b', 'phi_b',
    ],
    'fig_kickoff': ['family', 'x', 'tau_sq', 'rate', 'delta_e_mean', 'delta_e_var'],
    'fig_distance': ['family', 'x', 'theta_a', 'phi_a', 'theta_b', 'phi_b', 't', 'distance'],
    'fig_product_mixture': [
        'a', 'family', 'x', 'theta_a', 'phi_a', 'theta_b', 'phi_b', 't', 'distance',
    ],
    'optimize': [
        'state', 'objective', 'theta_a', 'phi_a', 'theta_b', 'phi_b', 'value', 'evaluations',
    ],
}

SUMMARY_FIELDS = [
    'count', 'mean_x', 'median_x', 'std_x', 'mean_y', 'median_y', 'std_y', 'max_d_quarter',
]

# Exit codes
EXIT_CODES = {
    'SUCCESS': 0,
    'FAILURE': 1,
    'USAGE': 2,
    'IO': 3,
}

# Response constants
RESPONSE_MESSAGES = {
    'UNKNOWN_FAMILY': 'Unknown state family',
    'MISSING_STATE': 'No state given: use --family/--x, --bell, --alpha or --gamma.',
    'T_PERP_MIXED': 't-perp is defined for the pure alpha|11> + beta|00> family only (use --alpha).',
    'NEEDS_TIME': '{quantity} needs --t.',
    'UNWRITABLE_PATH': 'Cannot write output file',
}

# Named magnet configurations (theta_a, phi_a, theta_b, phi_b); z-z is (z, -z)
CONFIG_SHORTHANDS = {
    'xx': (math.pi / 2, 0.0, math.pi / 2, 0.0),
    'x-x': (math.pi / 2, 0.0, math.pi / 2, math.pi),
    'yy': (math.pi / 2, math.pi / 2, math.pi / 2, math.pi / 2),
    'zz': (0.0, 0.0, 0.0, 0.0),
    'z-z': (0.0, 0.0, math.pi, 0.0),
    'xz': (math.pi / 2, 0.0, 0.0, 0.0),
}

# Families plotted by the z-axis and kickoff figures
MIXED_FAMILIES = ('werner', 'gisin', 'rho3')
