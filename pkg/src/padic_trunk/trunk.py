"""Trunk construction for polynomial congruences modulo prime powers.

The solutions of P(x) = 0 (mod p**e) across all e form a tree inside the
p-adic congruence tree.  That tree can be exponentially large, but it is
fully determined by a compact subtree, the trunk: each trunk vertex
(r, k) carries a thickness t with P(r + p*X) = p**t * Q(X), and the
cumulative thickness phi along the path tells exactly which levels the
vertex accounts for.  This module computes thicknesses, successors and
residual degrees, builds the trunk level by level, certifies infinite
branches (simple-root continuations and exact state cycles), and lifts
simple roots to arbitrary prime-power moduli.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .polynomial import Polynomial
from .primes import is_prime

STATUS_EXPANDED = "expanded"
STATUS_LEAF = "leaf"
STATUS_HENSEL = "hensel-certified"
STATUS_CYCLE = "cycle-certified"
STATUS_UNDETERMINED = "undetermined"

#: Default cap on p for the exhaustive root scan over [0, p).
DEFAULT_MAX_PRIME = 10**6


class NotSimpleRootError(ValueError):
    """hensel_lift was handed a root whose derivative vanishes mod p."""


def _unit_content(P: Polynomial, p: int) -> bool:
    return any(c % p for c in P.coeffs)


def thickness(P: Polynomial, r: int, p: int) -> tuple[int, Polynomial]:
    """Thickness t and successor Q of P at a mod-p root r.

    P(r + p*X) = p**t * Q(X) with t maximal, so p does not divide Q.
    Requires p not dividing P itself and P(r) = 0 (mod p); t is then
    at least 1 and at most deg P.
    """
    if P.is_zero or not _unit_content(P, p):
        raise ValueError("unnormalized input: p divides P")
    if P.evaluate(r, p) != 0:
        raise ValueError(f"not a root: P({r}) is nonzero modulo {p}")
    return P.shift_scale(r, p).p_content(p)


def residual_degree(Q: Polynomial, p: int) -> int:
    """Degree of Q reduced modulo p; requires p not dividing Q."""
    if Q.is_zero or not _unit_content(Q, p):
        raise ValueError("unnormalized input: p divides Q")
    return Q.reduce_mod(p).degree


def hensel_lift(P: Polynomial, x1: int, p: int, e: int) -> int:
    """Lift a simple mod-p root of P to the unique root modulo p**e.

    Newton-style iteration: with D the inverse of P'(x1) mod p, each
    level applies the correction h = -(P(x)/p**j) * D and adds h * p**j.
    Returns the representative in [0, p**e).
    """
    if e < 1:
        raise ValueError("e must be positive")
    if P.evaluate(x1, p) != 0 or P.derivative().evaluate(x1, p) == 0:
        raise NotSimpleRootError(f"not a simple root: x = {x1} modulo {p}")
    d_inv = pow(P.derivative().evaluate(x1, p), -1, p)
    x = x1 % p
    pj = p
    for _ in range(e - 1):
        value = P.evaluate(x, pj * p)
        h = (-(value // pj) * d_inv) % p
        x += h * pj
        pj *= p
    return x


@dataclass
class TrunkNode:
    """Vertex (r, k) of the trunk: the residue class r modulo p**k.

    t is the thickness at this vertex (None on the root, which carries
    none), phi the cumulative thickness along the path from the root,
    successor the polynomial driving the next level, and s its residual
    degree (degree of the successor reduced mod p).
    """

    r: int
    k: int
    t: int | None
    phi: int
    successor: Polynomial
    s: int
    status: str = STATUS_UNDETERMINED
    children: list["TrunkNode"] = field(default_factory=list)
    # set on hensel-certified nodes: the unique simple root of successor mod p
    hensel_root: int | None = None
    # set on cycle-certified nodes: distance to the matching ancestor state
    # and the base-p digit pattern that repeats along the branch
    period: int | None = None
    cycle_digits: tuple[int, ...] | None = None


@dataclass
class Trunk:
    """The trunk of P for the prime p, expanded down to built_depth.

    P is normalized as p**t0 * P0 with p not dividing P0; all vertex data
    refers to P0, and the solver applies the t0 shift.
    """

    p: int
    t0: int
    P0: Polynomial
    root: TrunkNode
    built_depth: int

    def iter_nodes(self) -> Iterator[TrunkNode]:
        """All non-root vertices, preorder, children in increasing residue."""
        stack = list(reversed(self.root.children))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    @property
    def d_p(self) -> int:
        """Degree of P0 reduced modulo p; bounds the width of every level."""
        return self.P0.reduce_mod(self.p).degree

    @property
    def d_trunk(self) -> int:
        """Branch-tip count: finite leaves plus certified or open branches."""
        return sum(1 for n in self.iter_nodes() if n.status != STATUS_EXPANDED)

    def undetermined_nodes(self) -> list[TrunkNode]:
        return [n for n in self.iter_nodes() if n.status == STATUS_UNDETERMINED]

    @property
    def fully_resolved(self) -> bool:
        """True when every branch ends in a leaf or a certified infinite tail."""
        return not self.undetermined_nodes()


def _linear_root(Q: Polynomial, p: int) -> int:
    # Q mod p has degree 1 here: a*X + b with a invertible.
    red = Q.reduce_mod(p)
    b = red.coefficient(0)
    a = red.coefficient(1)
    return (-b * pow(a, -1, p)) % p


def build_trunk(P: Polynomial, p: int, max_level: int, *,
                max_prime: int = DEFAULT_MAX_PRIME) -> Trunk:
    """Build the trunk of P for the prime p down to level max_level.

    Per level, roots of the current successor modulo p are found by
    exhaustive scan over [0, p) (hence the cap on p), and each root gets
    a child carrying its thickness, successor and residual degree.

    Branch endings:
      * residual degree 0, or no mod-p roots of the successor: "leaf";
      * thickness 1 with residual degree 1: "hensel-certified" (a simple
        root whose unique infinite thickness-1 continuation is lifted on
        demand rather than stored);
      * (successor, thickness) state equal to an ancestor's on the same
        branch: "cycle-certified" with the repeating digit pattern;
      * anything still open at max_level: "undetermined".
    """
    if not isinstance(max_level, int) or max_level < 1:
        raise ValueError("max_level must be a positive integer")
    if P.is_zero:
        raise ValueError("cannot build a trunk for the zero polynomial")
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > max_prime:
        raise ValueError(
            f"prime {p} exceeds the exhaustive-search cap {max_prime}"
            " (raise max_prime to override)")

    t0, p0 = P.p_content(p)
    root = TrunkNode(r=0, k=0, t=None, phi=0, successor=p0,
                     s=residual_degree(p0, p))
    stack: list[tuple[TrunkNode, tuple[TrunkNode, ...]]] = [(root, ())]
    while stack:
        node, ancestors = stack.pop()
        if node.k > 0:
            if node.s == 0:
                # successor is a nonzero constant mod p: no roots ever
                node.status = STATUS_LEAF
                continue
            if node.t == 1:
                # thickness 1 with s = 1: a simple root, infinite by lifting
                node.status = STATUS_HENSEL
                node.hensel_root = _linear_root(node.successor, p)
                continue
            match = next((a for a in reversed(ancestors)
                          if a.t == node.t and a.successor == node.successor), None)
            if match is not None:
                node.status = STATUS_CYCLE
                node.period = node.k - match.k
                node.cycle_digits = tuple(
                    (node.r // p**q) % p for q in range(match.k, node.k))
                continue
            if node.k >= max_level:
                node.status = STATUS_UNDETERMINED
                continue
        elif node.s == 0:
            node.status = STATUS_LEAF
            continue

        red = node.successor.reduce_mod(p)
        roots = [x for x in range(p) if red.evaluate(x, p) == 0]
        if not roots:
            node.status = STATUS_LEAF
            continue
        node.status = STATUS_EXPANDED
        pk = p ** node.k
        child_ancestors = ancestors + (node,) if node.k > 0 else ()
        for rho in roots:
            t, successor = thickness(node.successor, rho, p)
            child = TrunkNode(r=node.r + rho * pk, k=node.k + 1, t=t,
                              phi=node.phi + t, successor=successor,
                              s=residual_degree(successor, p))
            node.children.append(child)
            stack.append((child, child_ancestors))
    return Trunk(p=p, t0=t0, P0=p0, root=root, built_depth=max_level)
