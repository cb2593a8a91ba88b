"""
The RingHom class represents a unital ring homomorphism between two finite rings.
"""

from typing import Optional

import numpy as np

from element_set import ElementSet, mask_to_bits
from finite_ring import FiniteRing, hom_check
from ring_errors import InvariantViolation, RingInputError


class RingHom:
    """A map of element ids domain -> codomain preserving +, * and one."""

    def __init__(self, domain: FiniteRing, codomain: FiniteRing, f_map, name: Optional[str] = None,
                 check: bool = True):
        """
        Initialize a RingHom.

        Args:
            domain: Source ring
            codomain: Target ring
            f_map: Codomain id for each domain id
            name: Label used in reports (e.g. "pi", "sigma")
            check: Certify the map with hom_check

        Raises:
            RingInputError: If the map is malformed
            InvariantViolation: If the map is not a homomorphism
        """
        f = np.asarray(f_map, dtype=np.int64)
        if check:
            report = hom_check(f, domain, codomain)
            if not report.ok:
                check_name, witness = report.violations[0]
                raise InvariantViolation(f"{name or 'map'} {check_name}", witness)
        elif f.shape != (domain.order,):
            raise RingInputError(f"map has {f.size} entries, domain has order {domain.order}")
        f = f.astype(np.int32)
        f.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.map = f
        self.name = name or "f"

    @classmethod
    def identity(cls, R: FiniteRing) -> 'RingHom':
        return cls(R, R, np.arange(R.order), name="id", check=False)

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def image(self, subset: ElementSet) -> ElementSet:
        """Image of a subset of the domain."""
        mask = np.zeros(self.codomain.order, dtype=bool)
        mask[self.map[subset.mask()]] = True
        return ElementSet.from_mask(self.codomain, mask)

    def preimage(self, subset: ElementSet) -> ElementSet:
        """Preimage of a subset of the codomain."""
        return ElementSet.from_mask(self.domain, subset.mask()[self.map])

    def kernel(self):
        """Kernel as a two-sided ideal of the domain."""
        from ideals import Ideal, Side
        return Ideal(self.domain, mask_to_bits(self.map == self.codomain.zero), Side.TWO_SIDED, check=False)

    def compose(self, after: 'RingHom') -> 'RingHom':
        """The composite `after` o `self`."""
        if after.domain is not self.codomain and after.domain != self.codomain:
            raise RingInputError(f"cannot compose {self.name} with {after.name}: rings do not match")
        return RingHom(self.domain, after.codomain, after.map[self.map],
                       name=f"{after.name}.{self.name}", check=False)

    def is_injective(self) -> bool:
        return np.unique(self.map).size == self.domain.order

    def is_surjective(self) -> bool:
        return np.unique(self.map).size == self.codomain.order

    def __repr__(self):
        return f"RingHom({self.name}: {self.domain.name} -> {self.codomain.name})"

    def __str__(self):
        return (f"{self.name}: {self.domain.name} -> {self.codomain.name} "
                f"[{', '.join(str(x) for x in self.map)}]")
