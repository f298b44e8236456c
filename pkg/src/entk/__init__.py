"""entk: concurrence estimates for mixed and multipartite states."""

__version__ = "0.1.0"
