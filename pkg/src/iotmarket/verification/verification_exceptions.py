# iotmarket/verification/verification_exceptions.py


class VerificationError(Exception):
    """Raised when an audit is asked for a grid below its minimum size."""
