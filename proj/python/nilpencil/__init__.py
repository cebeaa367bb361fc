"""Einstein-nilradical decision procedures for two-step nilpotent Lie
algebras of type (2, q).

All functions take and return JSON text in the same schema the ``nilpencil``
command-line tool uses; see the project README for the field reference.
"""

try:
    from ._core import (  # type: ignore[attr-defined]
        classify,
        degeneration_witness,
        dual_heisenberg,
        dualize,
        generic_metric,
        invariants,
        pre_einstein,
        sl2_minimize,
        subsingular_metric,
        synthesize,
        verify,
    )
except ImportError:  # extension built outside the package (plain CMake)
    from _core import (  # type: ignore[no-redef]
        classify,
        degeneration_witness,
        dual_heisenberg,
        dualize,
        generic_metric,
        invariants,
        pre_einstein,
        sl2_minimize,
        subsingular_metric,
        synthesize,
        verify,
    )

__all__ = [
    "classify",
    "degeneration_witness",
    "dual_heisenberg",
    "dualize",
    "generic_metric",
    "invariants",
    "pre_einstein",
    "sl2_minimize",
    "subsingular_metric",
    "synthesize",
    "verify",
]
