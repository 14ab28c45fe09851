"""
This is the version information for tanglekit
"""
__version__ = "0.1.0"
__version_tuple__ = (0, 1, 0)
