"""Shared exception types; the CLI maps them to exit codes."""


class DetlabError(Exception):
    pass


class ParseError(DetlabError):
    """Bad input text or spec string (CLI exit code 2)."""


class BudgetError(DetlabError):
    """An enumeration or cap guard was exceeded (CLI exit code 4)."""


class CheckError(DetlabError):
    """An invariant that should hold by theorem failed (CLI exit code 3)."""
