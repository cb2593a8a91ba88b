"""
The prime-radical filtration R = n^0 > n > ... > n^(nu+1) = 0, its layer
modules N_i = n^i / n^(i+1), the associated graded ring, torsion submodules
and the degree-by-degree Ore solver.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

import numpy as np

from element_set import ElementSet, MultSet, mask_to_bits
from finite_ring import FiniteRing, ValidationReport, regular_elements
from ideals import RadicalData, prime_radical, semiprime_quotient
from ore import as_mult_set, is_left_denominator, is_left_ore
from ring_errors import InvariantViolation, PreconditionError, RingResourceError
from ring_hom import RingHom
from settings import get_settings

logger = logging.getLogger(__name__)


# ==================== LAYERS ====================

@dataclass
class LayerModule:
    """
    N_i = n^i / n^(i+1) as an R-bimodule.

    Coset c is represented by carrier[c], the smallest element of R in it.
    left_action[r, c] is the coset of r * carrier[c]; right_action[r, c] the
    coset of carrier[c] * r.
    """

    index: int
    carrier: np.ndarray
    coset_of: np.ndarray
    add_table: np.ndarray
    left_action: np.ndarray
    right_action: np.ndarray
    zero: int = 0

    @property
    def size(self) -> int:
        return self.carrier.size


def _build_layer(R: FiniteRing, data: RadicalData, i: int) -> LayerModule:
    members = np.flatnonzero(data.power(i).mask())
    below = data.power(i + 1).ids()
    canonical = R.add_table[np.ix_(members, below)].min(axis=1)
    reps = np.unique(canonical)
    coset_of = np.full(R.order, -1, dtype=np.int64)
    coset_of[members] = np.searchsorted(reps, canonical)

    layer = LayerModule(
        index=i,
        carrier=reps,
        coset_of=coset_of,
        add_table=coset_of[R.add_table[np.ix_(reps, reps)]],
        left_action=coset_of[R.mul_table[:, reps]],
        right_action=coset_of[R.mul_table[reps, :].T],
    )

    # actions must not depend on the representative
    left_all = coset_of[R.mul_table[:, members]]
    right_all = coset_of[R.mul_table[members, :].T]
    classes = coset_of[members]
    for side, full_table, table in (("left", left_all, layer.left_action), ("right", right_all, layer.right_action)):
        bad = full_table != table[:, classes]
        if bad.any():
            r, k = np.argwhere(bad)[0]
            raise InvariantViolation(f"{side} action on N_{i} is well defined", (int(r), int(members[k])))

    radical_ids = data.radical.ids()
    for side, table in (("left", layer.left_action), ("right", layer.right_action)):
        if (table[radical_ids] != layer.zero).any():
            raise InvariantViolation(f"n annihilates N_{i} from the {side}", i)
    return layer


@dataclass
class Filtration(RadicalData):
    """RadicalData with the layer modules N_0 = R-bar, N_1, ..., N_nu."""

    layers: List[LayerModule] = field(default_factory=list)


def radical_filtration(R: FiniteRing, radical: Optional[RadicalData] = None) -> Filtration:
    data = radical or prime_radical(R)
    layers = [_build_layer(R, data, i) for i in range(data.nu + 1)]
    return Filtration(radical=data.radical, nu=data.nu, powers=data.powers, layers=layers)


def layer_module(R: FiniteRing, i: int, radical: Optional[RadicalData] = None) -> LayerModule:
    """
    N_i for 1 <= i <= nu.

    Raises:
        PreconditionError: If i is out of range
    """
    data = radical or prime_radical(R)
    if not 1 <= i <= data.nu:
        raise PreconditionError(f"layer index {i} outside 1..{data.nu}")
    return _build_layer(R, data, i)


def element_degree(data: RadicalData, r: int) -> int:
    """Largest i <= nu + 1 with r in n^i (nu + 1 only for zero)."""
    degree = 0
    while degree + 1 < len(data.powers) and r in data.powers[degree + 1]:
        degree += 1
    return degree


# ==================== ASSOCIATED GRADED RING ====================

@dataclass
class GradedRing:
    """
    gr R = N_0 + N_1 + ... + N_nu.

    An element is the digit tuple (c_0, ..., c_nu) of layer coset ids, c_0 most
    significant, each digit in base |N_i|.
    """

    ring: FiniteRing
    sizes: List[int]
    weights: List[int]
    degree: Dict[int, int]
    embedding: RingHom

    def components(self, x: int) -> List[int]:
        return [(x // w) % size for w, size in zip(self.weights, self.sizes)]

    def homogeneous(self, i: int, c: int) -> int:
        return c * self.weights[i]

    def homogeneous_part(self, x: int, i: int) -> int:
        return self.homogeneous(i, self.components(x)[i])

    def component_mask(self, i: int) -> np.ndarray:
        """Elements whose only nonzero digit is i (zero included)."""
        ids = np.arange(self.ring.order)
        others = np.zeros(self.ring.order, dtype=bool)
        for j, (w, size) in enumerate(zip(self.weights, self.sizes)):
            if j != i:
                others |= (ids // w) % size != 0
        return ~others


def gr_ring(R: FiniteRing, filtration: Optional[Filtration] = None, gr_cap: Optional[int] = None) -> GradedRing:
    """
    Build gr R with multiplication induced from R on layer representatives.

    Raises:
        RingResourceError: If |gr R| exceeds gr_cap
    """
    cap = gr_cap if gr_cap is not None else get_settings().gr_cap
    filt = filtration or radical_filtration(R)
    sizes = [layer.size for layer in filt.layers]
    total = int(np.prod(sizes))
    if total > cap:
        raise RingResourceError(f"gr({R.name}) would have order {total}, above {cap}", total)
    if total != R.order:
        raise InvariantViolation("gr R has the order of R", (total, R.order))

    weights = [int(np.prod(sizes[i + 1:])) for i in range(len(sizes))]
    ids = np.arange(total)
    digits = [(ids // w) % size for w, size in zip(weights, sizes)]

    add = np.zeros((total, total), dtype=np.int64)
    mul = np.zeros((total, total), dtype=np.int64)
    for k, layer in enumerate(filt.layers):
        add += layer.add_table[digits[k][:, None], digits[k][None, :]] * weights[k]
        acc = np.zeros((total, total), dtype=np.int64)
        for i in range(k + 1):
            j = k - i
            left = filt.layers[i].carrier[digits[i]]
            right = filt.layers[j].carrier[digits[j]]
            piece = layer.coset_of[R.mul_table[left[:, None], right[None, :]]]
            acc = layer.add_table[acc, piece]
        mul += acc * weights[k]

    one = int(filt.layers[0].coset_of[R.one]) * weights[0]
    ring = FiniteRing(add, mul, one, name=f"gr({R.name})", order_cap=total)

    degree = {}
    for x in range(1, total):
        nonzero = [i for i, d in enumerate(digits) if d[x] != 0]
        if len(nonzero) == 1:
            degree[x] = nonzero[0]

    _, Rbar, _ = semiprime_quotient(R, filt)
    embedding = RingHom(Rbar, ring, np.arange(Rbar.order) * weights[0], name="iota")
    return GradedRing(ring=ring, sizes=sizes, weights=weights, degree=degree, embedding=embedding)


def graded_product_check(G: GradedRing) -> ValidationReport:
    """deg(xy) = deg(x) + deg(y) for homogeneous x, y with xy != 0."""
    report = ValidationReport()
    homogeneous = sorted(G.degree)
    for x in homogeneous:
        for y in homogeneous:
            product = G.ring.mul(x, y)
            if product == 0:
                continue
            if G.degree.get(product) != G.degree[x] + G.degree[y]:
                report.add("degrees add under multiplication", (x, y))
                return report
    return report


def c_tilde(R: FiniteRing, radical: Optional[RadicalData] = None) -> MultSet:
    """
    pi(C): the image of the regular elements in R-bar.

    Raises:
        InvariantViolation: If the image holds a non-regular element of R-bar
    """
    _, Rbar, pi = semiprime_quotient(R, radical)
    image = MultSet(Rbar, pi.image(regular_elements(R)).bits)
    if not image.issubset(regular_elements(Rbar)):
        raise InvariantViolation("pi(C) consists of regular elements of R-bar", image.ids())
    return image


# ==================== MODULES AND TORSION ====================

class Module:
    """A finite left module over R given by its addition table and action table [r, m]."""

    def __init__(self, ring: FiniteRing, add_table: np.ndarray, action: np.ndarray, name: str):
        self.ring = ring
        self.add_table = np.asarray(add_table)
        self.action = np.asarray(action)
        self.name = name

    @property
    def size(self) -> int:
        return self.add_table.shape[0]

    @classmethod
    def regular(cls, R: FiniteRing) -> 'Module':
        return cls(R, R.add_table, R.mul_table, f"{R.name} (regular)")

    @classmethod
    def from_layer(cls, R: FiniteRing, layer: LayerModule) -> 'Module':
        return cls(R, layer.add_table, layer.left_action, f"N_{layer.index}")

    def quotient(self, sub_mask: np.ndarray, name: str) -> 'Module':
        """M / K for a submodule K given as a mask."""
        members = np.flatnonzero(sub_mask)
        canonical = self.add_table[:, members].min(axis=1)
        reps = np.unique(canonical)
        coset = np.searchsorted(reps, canonical)
        action = coset[self.action[:, reps]]
        if (coset[self.action] != action[:, coset]).any():
            raise InvariantViolation(f"action on {name} is well defined", self.name)
        return Module(self.ring, coset[self.add_table[np.ix_(reps, reps)]], action, name)

    @classmethod
    def ring_quotient(cls, R: FiniteRing, I: ElementSet) -> 'Module':
        """R / I for a left ideal I."""
        return cls.regular(R).quotient(I.mask(), f"{R.name}/{I}")

    @classmethod
    def layer_quotient(cls, R: FiniteRing, layer: LayerModule, c: int) -> 'Module':
        """N_i / N_i c for an element c of R acting on the right."""
        sub = np.zeros(layer.size, dtype=bool)
        sub[layer.right_action[c, :]] = True
        return cls.from_layer(R, layer).quotient(sub, f"N_{layer.index}/N_{layer.index}*{c}")


def tor_submodule(R: FiniteRing, S: Union[ElementSet, List[int]], M: Optional[Module] = None) -> FrozenSet[int]:
    """
    {m : sm = 0 for some s in S}.

    Raises:
        InvariantViolation: If S is left Ore and the set is not a submodule
    """
    S = as_mult_set(R, S)
    M = M or Module.regular(R)
    killed = (M.action[S.ids(), :] == 0).any(axis=0)
    if is_left_ore(R, S):
        members = np.flatnonzero(killed)
        closed = killed[M.add_table[np.ix_(members, members)]].all() and killed[M.action[:, members]].all()
        if not closed:
            raise InvariantViolation(f"tor of {M.name} is a submodule", S.ids())
    return frozenset(int(m) for m in np.flatnonzero(killed))


def max_ker_check(R: FiniteRing, S: Union[ElementSet, List[int]], M: Optional[Module] = None) -> ValidationReport:
    """
    The kernels of m -> sm (s in S) have a single maximal member, equal to tor_S(M).

    Raises:
        PreconditionError: If S is not a left denominator set
    """
    S = as_mult_set(R, S)
    verdict = is_left_denominator(R, S)
    if not verdict:
        raise PreconditionError(f"{S} is not a left denominator set", verdict.witness)
    M = M or Module.regular(R)
    kernels = {mask_to_bits(M.action[s, :] == 0) for s in S.ids()}
    maximal = [k for k in kernels if not any(other != k and k & ~other == 0 for other in kernels)]
    torsion = tor_submodule(R, S, M)
    report = ValidationReport()
    if len(maximal) != 1:
        report.add("max ker has exactly one member", (len(maximal),))
    elif maximal[0] != sum(1 << m for m in torsion):
        report.add("maximal kernel equals the torsion submodule", tuple(sorted(torsion)))
    return report


# ==================== ORE SOLVER ====================

def _solve(R: FiniteRing, data: RadicalData, regular: np.ndarray, c: int, r: int, floor: int) -> Tuple[int, int]:
    """c' r = r' c with c' regular, by induction downward from the top layer."""
    if r == R.zero:
        return R.one, R.zero
    degree = element_degree(data, r)
    if degree < floor:
        raise InvariantViolation("correction terms rise in degree", (r, degree, floor))
    nu = data.nu
    mul = R.mul_table

    if degree == nu:
        # top layer: c' r = r' c with r' in n^nu
        top = np.asarray(data.power(nu).ids())
        targets = mul[top, c]
        for cp in regular:
            match = np.flatnonzero(targets == mul[cp, r])
            if match.size:
                return int(cp), int(top[match[0]])
        raise InvariantViolation("N_nu / N_nu c is torsion", (c, r))

    if degree == 0:
        # Ore step in R-bar, then the correction a = c1 r - r1 c lies in n
        inside = data.power(1).mask()
        for c1 in regular:
            gaps = inside[R.sub(np.full(R.order, mul[c1, r]), mul[:, c])]
            if gaps.any():
                r1 = int(np.flatnonzero(gaps)[0])
                a = R.sub(R.mul(c1, r), R.mul(r1, c))
                c2, b = _solve(R, data, regular, c, a, 1)
                return R.mul(c2, c1), R.add(R.mul(c2, r1), b)
        raise InvariantViolation("pi(C) satisfies the Ore condition in R-bar", (c, r))

    # layer step: s r = x c + y with x in n^i and y in n^(i+1)
    layer = np.asarray(data.power(degree).ids())
    deeper = data.power(degree + 1).mask()
    for s in regular:
        gaps = deeper[R.sub(np.full(layer.size, mul[s, r]), mul[layer, c])]
        if gaps.any():
            x = int(layer[np.flatnonzero(gaps)[0]])
            y = R.sub(R.mul(s, r), R.mul(x, c))
            t, z = _solve(R, data, regular, c, y, degree + 1)
            return R.mul(t, s), R.add(R.mul(t, x), z)
    raise InvariantViolation(f"N_{degree} / N_{degree} c is torsion", (c, r))


def ore_solve(R: FiniteRing, c: int, r: int, radical: Optional[RadicalData] = None) -> Tuple[int, int]:
    """
    Find (c', r') with c' regular and c' r = r' c.

    Proceeds by induction on the degree of r in the radical filtration: a
    degree-0 element is handled in R-bar and leaves a correction in n, a
    degree-i element leaves a correction in n^(i+1), and the top layer is
    solved directly.

    Raises:
        PreconditionError: If c is not regular
    """
    regular = regular_elements(R)
    if c not in regular:
        raise PreconditionError(f"{c} is not a regular element of {R.name}", (c,))
    if not 0 <= r < R.order:
        raise PreconditionError(f"{r} is not an element of {R.name}", (r,))
    data = radical or prime_radical(R)
    c_new, r_new = _solve(R, data, np.asarray(regular.ids()), c, r, 0)
    if c_new not in regular or R.mul(c_new, r) != R.mul(r_new, c):
        raise InvariantViolation("ore_solve returns c'r = r'c", (c, r, c_new, r_new))
    return c_new, r_new


def brute_force_ore_pair(R: FiniteRing, c: int, r: int) -> Optional[Tuple[int, int]]:
    """First (c', r') in id order with c' regular and c' r = r' c."""
    products = R.mul_table[:, c]
    for cp in regular_elements(R).ids():
        match = np.flatnonzero(products == R.mul(cp, r))
        if match.size:
            return cp, int(match[0])
    return None
