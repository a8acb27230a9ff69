from .core import compute_digest, file_digest

__all__ = (
    "compute_digest",
    "file_digest",
)
