"""
qspeedlab: evolution speed of two-spin mixed states in local magnetic fields.
"""

__version__ = '1.0.0'
