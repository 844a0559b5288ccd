"""Errors raised while reading or validating corpus files."""


class FormatError(ValueError):
    """A malformed input file; carries the offending path and line number."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}: "
        if line is not None:
            prefix += f"line {line}: "
        super().__init__(prefix + message)


class TreeError(ValueError):
    """A dependency tree that violates tree structure; names the sentence."""

    def __init__(self, message, sentence_id=None):
        self.sentence_id = sentence_id
        if sentence_id is not None:
            message = f"sentence {sentence_id}: {message}"
        super().__init__(message)
