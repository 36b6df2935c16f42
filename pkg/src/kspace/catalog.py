"""Built-in KGL data and knot shorthands.

The hyperbolic KGLs below are trusted inputs: their symmetry groups and
representations are recorded, not computed.  Inversion data are chosen to be
compatible with the recorded representation (they conjugate the generator to
its inverse); families without a known inversion carry none.
"""

from __future__ import annotations

import re
from types import MappingProxyType
from typing import Union

from .errors import UnknownName
from .knot_model import HypKnot, KglDatum, KnotTree, Torus
from .signed_perm import SignedPerm


def _kgl(name, n, b_order, rho, inversion=None):
    return KglDatum(
        name=name,
        n=n,
        b_order=b_order,
        rho_gen=SignedPerm.parse(rho, n),
        inversion=None if inversion is None else SignedPerm.parse(inversion, n),
    )


KGLS = MappingProxyType({
    # Borromean rings: B_L = Z4, generator a signed 2-cycle of order 4
    "borromean": _kgl("borromean", 2, 4, "(1 2 -)", "(1 2)"),
    # Whitehead link: B_L = Z2 reversing the companion circle
    "whitehead": _kgl("whitehead", 1, 2, "(1 -)", "(1 -)"),
    # 6^2_3: B_L = Z2 acting trivially on the companion
    "link6_3_2": _kgl("link6_3_2", 1, 2, "(1)", "(1 -)"),
})

KNOTS = MappingProxyType({
    "fig8": HypKnot("fig8", invertible=True),
    "trefoil": Torus(2, 3),
})

_FAMILY_RE = re.compile(r"^(stoimenow|sakuma)\(?(\d+)\)?$")


def stoimenow(n: int) -> KglDatum:
    """Z_n acting on n companions by an n-cycle."""
    if n < 1:
        raise ValueError("stoimenow(n) needs n >= 1")
    rho = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    return _kgl(f"stoimenow{n}", n, n, rho)


def sakuma(n: int) -> KglDatum:
    """Z_2n acting on n companions by the signed n-cycle (1 2 ... n -), n odd."""
    if n < 1 or n % 2 == 0:
        raise ValueError("sakuma(n) needs odd n >= 1")
    rho = "(" + " ".join(str(i) for i in range(1, n + 1)) + " -)"
    return _kgl(f"sakuma{n}", n, 2 * n, rho)


def catalog_get(name: str) -> Union[KglDatum, KnotTree]:
    """Look up a KGL or knot shorthand.

    Family members are spelled ``stoimenow(3)`` or ``stoimenow3``.
    """
    if name in KGLS:
        return KGLS[name]
    if name in KNOTS:
        return KNOTS[name]
    m = _FAMILY_RE.match(name)
    if m:
        family, n = m.group(1), int(m.group(2))
        try:
            return stoimenow(n) if family == "stoimenow" else sakuma(n)
        except ValueError:
            raise UnknownName(name) from None
    raise UnknownName(name)


def catalog_names() -> list[str]:
    return sorted(KGLS) + sorted(KNOTS) + ["stoimenow(n)", "sakuma(n)"]
