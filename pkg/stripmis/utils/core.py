import hashlib
from pathlib import Path
from typing import Union


def compute_digest(data: Union[str, bytes]) -> str:
    """md5 hex digest used to identify report inputs.

    >>> compute_digest("p 1 0\\nv 0 1\\n")
    '5398d90f653bb74b9811671c6d7cefa4'
    """
    if isinstance(data, str):
        data = data.encode()
    return hashlib.md5(data).hexdigest()


def file_digest(path: Union[str, Path]) -> str:
    return compute_digest(Path(path).read_bytes())
