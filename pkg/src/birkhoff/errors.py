"""Exit codes shared by the runner and the CLI."""

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INCOMPLETE = 2
EXIT_INTEGRITY = 3
EXIT_USAGE = 64


class IncompleteError(Exception):
    """Some chunks of a manifest have no result yet."""

    exit_code = EXIT_INCOMPLETE

    def __init__(self, missing):
        self.missing = list(missing)
        shown = ", ".join(self.missing[:10])
        more = f" (+{len(self.missing) - 10} more)" if len(self.missing) > 10 else ""
        super().__init__(f"{len(self.missing)} chunk(s) missing: {shown}{more}")


class IntegrityError(Exception):
    """Two results for one chunk disagree. Never recoverable."""

    exit_code = EXIT_INTEGRITY
