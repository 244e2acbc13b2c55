class SamskitError(Exception):
    """Base class for user and data errors raised by samskit."""
