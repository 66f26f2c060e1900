"""Shared typed errors."""


class ResourceLimitError(Exception):
    """A configured resource cap was hit; never silently converted into
    a mathematical verdict."""

    def __init__(self, stage, limit, detail=""):
        self.stage = stage
        self.limit = limit
        self.detail = detail
        msg = "%s: limit %r exceeded" % (stage, limit)
        if detail:
            msg += " (%s)" % detail
        super().__init__(msg)
