"""Index of the distinct-character sets of a text's substrings.

The heavy lifting lives in the compiled module ``_fpindex``; this package
re-exports its public names. Build an index with ``Index.build(text)``, ask
``exists("ac")`` whether some substring uses exactly those characters, and
``report("ac")`` for where the maximal ones are.
"""

try:
    from ._fpindex import (  # type: ignore[attr-defined]
        Error,
        FormatError,
        Index,
        UnknownFingerprint,
        gen_wk,
    )
except ImportError:  # pragma: no cover - build-tree layout without the package dir
    from _fpindex import (  # type: ignore[no-redef]
        Error,
        FormatError,
        Index,
        UnknownFingerprint,
        gen_wk,
    )

__all__ = ["Index", "gen_wk", "Error", "FormatError", "UnknownFingerprint"]
