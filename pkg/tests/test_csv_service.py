import io

import pytest

from qspeedlab.services import CSVService
from qspeedlab.services.error_handler import PersistenceError, ValidationError

KICKOFF_ROWS = [
    {'family': 'gisin', 'x': 0.0, 'tau_sq': 0.5, 'rate': 2.0, 'delta_e_mean': 0.0, 'delta_e_var': 2.0},
    {'family': 'gisin', 'x': 1 / 3, 'tau_sq': None, 'rate': 0.0, 'delta_e_mean': 0.0,
     'delta_e_var': 8 / 3},
]


def test_write_rows_format():
    buffer = io.StringIO()
    CSVService.write_rows(KICKOFF_ROWS, 'fig_kickoff', buffer)
    assert buffer.getvalue() == (
        'family,x,tau_sq,rate,delta_e_mean,delta_e_var\n'
        'gisin,0,0.5,2,0,2\n'
        'gisin,0.333333333333,,0,0,2.66666666667\n'
    )


def test_to_frame_orders_columns_and_drops_extras():
    frame = CSVService.to_frame([{'value': 1.5, 'state': 'phi+', 'extra': 9}], 'optimize')
    assert list(frame.columns) == ['state', 'objective', 'theta_a', 'phi_a', 'theta_b', 'phi_b',
                                   'value', 'evaluations']
    assert frame.loc[0, 'state'] == 'phi+'


def test_empty_frame_writes_header_only(tmp_path):
    path = tmp_path / 'empty.csv'
    CSVService.write_frame(CSVService.to_frame([], 'fig_distance'), path)
    assert path.read_text(encoding='utf-8') == 'family,x,theta_a,phi_a,theta_b,phi_b,t,distance\n'


def test_append_without_header(tmp_path):
    path = tmp_path / 'kickoff.csv'
    CSVService.write_frame(CSVService.to_frame(KICKOFF_ROWS[:1], 'fig_kickoff'), path)
    CSVService.write_frame(CSVService.to_frame(KICKOFF_ROWS[1:], 'fig_kickoff'), path,
                           header=False, append=True)
    frame = CSVService.read_frame(path, 'fig_kickoff')
    assert len(frame) == 2
    assert frame['x'].tolist()[1] == pytest.approx(1 / 3, rel=1e-11)


def test_read_frame_checks_header(tmp_path):
    path = tmp_path / 'kickoff.csv'
    CSVService.write_rows(KICKOFF_ROWS, 'fig_kickoff', path)
    with pytest.raises(ValidationError):
        CSVService.read_frame(path, 'survey')


def test_missing_file_is_persistence_error(tmp_path):
    with pytest.raises(PersistenceError):
        CSVService.read_frame(tmp_path / 'nope.csv')


def test_unwritable_target_is_persistence_error(tmp_path):
    with pytest.raises(PersistenceError):
        CSVService.write_rows(KICKOFF_ROWS, 'fig_kickoff', tmp_path)


def test_unknown_schema():
    with pytest.raises(ValidationError):
        CSVService.schema('histogram')
