from .path import absolute_path

__all__ = [
    "absolute_path",
]
