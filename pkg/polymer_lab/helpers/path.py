from pathlib import Path
from typing import Union


def absolute_path(path: Union[str, Path]) -> Path:
    """Resolve a path relative to the working directory (``resolve`` alone may stay relative on Windows).

    Args:
        path: Path to make absolute.

    Returns:
        Absolute path.

    """
    full_path = Path(path).resolve().absolute()
    assert full_path.is_absolute(), f"Expected path to be absolute: {full_path}"
    return full_path
