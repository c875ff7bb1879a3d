"""Kernel selection: compiled extension when available, pure Python otherwise.

The hot kernels (colouring scans, induced-subgraph search, canonical codes
and the rule engine) exist twice: a Cython extension (``_core``) and a pure
Python mirror (``_pure``) with identical semantics.  The compiled backend is
chosen automatically at import; setting the environment variable
``MATCHCUT_PURE=1`` forces the pure fallback.  Each wrapper also falls back
per call when an input exceeds the compiled kernel's size caps.
"""

from __future__ import annotations

import importlib
import os

from . import _pure

_core = None
if os.environ.get("MATCHCUT_PURE", "") in ("", "0"):
    try:  # pragma: no cover - depends on the build environment
        _core = importlib.import_module("._core", __name__)
    except ImportError:
        _core = None

HAS_COMPILED = _core is not None


def active_backend() -> str:
    """``"compiled"`` when the extension is in use, else ``"pure"``."""
    return "compiled" if HAS_COMPILED else "pure"


def canon_code(n: int, adj: list[int]) -> bytes:
    """Canonical adjacency code; equal codes mean isomorphic graphs."""
    if _core is not None and n <= 16:
        return _core.canon_code(n, list(adj))
    return _pure.canon_code(n, list(adj))


def induced_search(
    hn: int,
    hadj: list[int],
    pn: int,
    padj: list[int],
    order: list[int],
    constraints: list[tuple[int, int]],
    lexmin: bool,
) -> list[int] | None:
    """Induced embedding of the pattern into the host, or ``None``."""
    if _core is not None and hn <= 128 and pn <= 30:
        return _core.induced_search(hn, list(hadj), pn, list(padj), list(order),
                                    list(constraints), bool(lexmin))
    return _pure.induced_search(hn, hadj, pn, padj, order, constraints, lexmin)


def path_union_search(hn: int, hadj: list[int], lengths: list[int]) -> bool:
    """Existence of an induced disjoint union of paths with the given orders."""
    if _core is not None and hn <= 128 and sum(lengths) <= 30:
        return bool(_core.path_union_search(hn, list(hadj), list(lengths)))
    return _pure.path_union_search(hn, hadj, list(lengths))


def scan_colourings(n: int, adj: list[int], level: int, start_b: int) -> int:
    """First counter ``b >= start_b`` whose colouring passes ``level``, or -1.

    Counter convention: vertex 0 is red; vertex ``i >= 1`` is blue iff bit
    ``i - 1`` of ``b`` is set.  Level 1 = valid, level 2 = perfect.
    """
    if _core is not None and n <= 63:
        return _core.scan_colourings(n, list(adj), level, start_b)
    return _pure.scan_colourings(n, adj, level, start_b)


def check_level(n: int, adj: list[int], level: int, blue_mask: int) -> bool:
    """Whether the total colouring given by ``blue_mask`` passes ``level``."""
    if _core is not None and n <= 63:
        return bool(_core.check_level(n, list(adj), level, blue_mask))
    return _pure.check_level(n, adj, level, blue_mask)


def enumerate_level_masked(
    n: int, adj: list[int], level: int, red_mask: int, blue_mask: int
) -> list[int]:
    """Blue-masks of all colourings passing ``level`` that respect the forced masks."""
    if _core is not None and n <= 63:
        return _core.enumerate_level_masked(n, list(adj), level, red_mask, blue_mask)
    return _pure.enumerate_level_masked(n, adj, level, red_mask, blue_mask)


def enumerate_level_grouped(
    n: int,
    adj: list[int],
    level: int,
    red_mask: int,
    blue_mask: int,
    groups: list[int],
) -> list[int]:
    """Like the masked scan, but free vertices come in all-or-nothing groups."""
    if _core is not None and n <= 63 and len(groups) <= 63:
        return _core.enumerate_level_grouped(
            n, list(adj), level, red_mask, blue_mask, list(groups)
        )
    return _pure.enumerate_level_grouped(n, adj, level, red_mask, blue_mask, groups)


def engine_available(n: int) -> bool:
    """Whether the compiled rule engine can run graphs of this size."""
    return _core is not None and n <= 63


def run_rules(
    masks, n: int, status: bytearray, upto: int
) -> tuple[bool, str | None, tuple[int, ...], int]:
    """Rule engine dispatch; mutates ``status`` in place."""
    if engine_available(n):
        refused, rule, vertices, firings = _core.run_rules(list(masks), n, status, upto)
        return refused, rule, tuple(vertices), firings
    from ..propagation import run_rules_raw

    return run_rules_raw(masks, n, status, upto, None)
