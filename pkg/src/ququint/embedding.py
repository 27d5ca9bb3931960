"""Storing logical qubits inside qudit levels.

A five-level site can host two qubits ``a`` and ``b`` plus one spare level:
level = 2a + b for levels 0..3, with level 4 left free as transient working
space. Alternatively one qubit can live in levels {0, 1} of a site of any
dimension, with every higher level kept free. Both layouts are described by
an :class:`EmbeddingMap`, which also understands two special roles:

- a *bystander*: a five-level site whose slot A is mapped but whose slot B
  belongs to a qubit outside the circuit being compiled; its b-bit is
  marginalized out at read-out and must be preserved by every gate;
- *work sites*: sites with no mapped qubit at all (used by the borrowed-qubit
  ladder); they must start and end at level 0.

Any probability left on a non-computational level at read-out is reported as
leakage, never silently renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import HADAMARD, PAULI_Z, LevelPairGate, QuditRegister, TwoLevelUnitary


class EmbeddingError(ValueError):
    """The embedding is inconsistent or does not support the request."""


class QubitSlot(Enum):
    """Which part of a site's level structure a qubit occupies."""

    A = "a"          # high bit of a two-qubit site: levels {0,2} vs {1,3}
    B = "b"          # low bit of a two-qubit site: levels {0,1} vs {2,3}
    SINGLE = "single"  # sole qubit of a site, levels {0,1}


@dataclass(frozen=True)
class EmbeddingMap:
    """Assignment of logical qubits to (site, slot) positions.

    Args:
        register: The hosting register.
        assignments: One (site, slot) pair per logical qubit, in qubit order.

    Slots A and B require a five-level site. A site may host the pair
    {A, B}, slot A alone (bystander site), a SINGLE qubit, or nothing
    (work site).
    """

    register: QuditRegister
    assignments: tuple[tuple[int, QubitSlot], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "assignments",
            tuple((int(s), QubitSlot(slot)) for s, slot in self.assignments),
        )
        seen = set()
        per_site: dict[int, set[QubitSlot]] = {}
        for site, slot in self.assignments:
            if not 0 <= site < self.register.num_sites:
                raise EmbeddingError(f"site {site} out of range")
            if (site, slot) in seen:
                raise EmbeddingError(f"slot {slot.value} of site {site} mapped twice")
            seen.add((site, slot))
            per_site.setdefault(site, set()).add(slot)
        for site, slots in per_site.items():
            dim = self.register.dims[site]
            if QubitSlot.SINGLE in slots and len(slots) > 1:
                raise EmbeddingError(
                    f"site {site} mixes a single-qubit slot with pair slots"
                )
            if (QubitSlot.A in slots or QubitSlot.B in slots) and dim != 5:
                raise EmbeddingError(
                    f"pair slots need a five-level site, site {site} has dimension {dim}"
                )
            if QubitSlot.B in slots and QubitSlot.A not in slots:
                raise EmbeddingError(f"site {site} uses slot B without slot A")

    @property
    def qubit_count(self) -> int:
        return len(self.assignments)

    def slots_of(self, site: int) -> set[QubitSlot]:
        return {slot for s, slot in self.assignments if s == site}

    @property
    def bystander_sites(self) -> tuple[int, ...]:
        """Sites whose slot B belongs to a qubit outside this map."""
        return tuple(
            site
            for site in range(self.register.num_sites)
            if self.slots_of(site) == {QubitSlot.A}
        )

    @property
    def work_sites(self) -> tuple[int, ...]:
        """Sites hosting no mapped qubit; they must stay at level 0."""
        return tuple(
            site for site in range(self.register.num_sites) if not self.slots_of(site)
        )


def default_embedding(n: int, odd_variant: str = "single") -> EmbeddingMap:
    """Canonical layout of ``n`` qubits on five-level sites.

    Even ``n`` uses n/2 sites with qubits 2k, 2k+1 on site k (slots A, B).
    Odd ``n`` places the first n-1 qubits the same way and the last qubit on
    one extra site, either alone (``odd_variant="single"``) or on slot A with
    slot B reserved for a bystander (``odd_variant="neighbor"``).

    Raises:
        ValueError: If ``n < 2`` or the variant name is unknown.
    """
    if n < 2:
        raise ValueError(f"need at least two qubits, got {n}")
    if odd_variant not in ("single", "neighbor"):
        raise ValueError(f"unknown odd variant {odd_variant!r}")
    assignments = []
    for q in range(n - (n % 2)):
        assignments.append((q // 2, QubitSlot.A if q % 2 == 0 else QubitSlot.B))
    num_sites = n // 2
    if n % 2:
        num_sites += 1
        last = num_sites - 1
        if odd_variant == "single":
            assignments.append((last, QubitSlot.SINGLE))
        else:
            assignments.append((last, QubitSlot.A))
    return EmbeddingMap(QuditRegister((5,) * num_sites), tuple(assignments))


def _parse_bits(bits, expected: int):
    out = [int(b) for b in bits]
    if len(out) != expected:
        raise ValueError(f"expected {expected} bits, got {len(out)}")
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"bits must be 0 or 1, got {list(bits)}")
    return out


def embed_basis_state(bits, emap: EmbeddingMap, bystander: int = 0) -> tuple[int, ...]:
    """Register basis label holding the given qubit bitstring.

    Args:
        bits: Bit per logical qubit (string like ``"0110"`` or a sequence).
        emap: The embedding to encode under.
        bystander: Bit stored in every unmapped slot B (default 0).

    Returns:
        Per-site level tuple; work sites are at level 0.
    """
    values = _parse_bits(bits, emap.qubit_count)
    if bystander not in (0, 1):
        raise ValueError(f"bystander bit must be 0 or 1, got {bystander}")
    levels = [0] * emap.register.num_sites
    for (site, slot), bit in zip(emap.assignments, values):
        if slot is QubitSlot.A:
            levels[site] += 2 * bit
        else:  # B and SINGLE both contribute the low bit
            levels[site] += bit
    for site in emap.bystander_sites:
        levels[site] += bystander
    return tuple(levels)


def lift_single_qubit_gate(
    u: TwoLevelUnitary, qubit: int, emap: EmbeddingMap
) -> list[LevelPairGate]:
    """Level-pair realization of a one-qubit gate on an embedded qubit.

    Slot A lifts to the commuting pair u^(0,2) u^(1,3), slot B to
    u^(0,1) u^(2,3), and a SINGLE slot to the lone u^(0,1). The product acts
    as ``u`` on the embedded qubit, as identity on any co-resident qubit,
    and fixes every higher level.
    """
    if not 0 <= qubit < emap.qubit_count:
        raise IndexError(f"qubit {qubit} out of range for {emap.qubit_count} qubits")
    site, slot = emap.assignments[qubit]
    if slot is QubitSlot.A:
        return [LevelPairGate(site, 0, 2, u), LevelPairGate(site, 1, 3, u)]
    if slot is QubitSlot.B:
        return [LevelPairGate(site, 0, 1, u), LevelPairGate(site, 2, 3, u)]
    return [LevelPairGate(site, 0, 1, u)]


def lift_hadamard(qubit: int, emap: EmbeddingMap) -> list[LevelPairGate]:
    return lift_single_qubit_gate(HADAMARD, qubit, emap)


def intra_ququint_cz(site: int, emap: EmbeddingMap) -> LevelPairGate:
    """Controlled-Z between the two qubits co-located on one site.

    Realized as Z on levels (0, 3), i.e. diag(1, 1, 1, -1, 1): only the
    |11> level of the embedded pair picks up the sign.

    Raises:
        EmbeddingError: If the site does not host both pair slots.
    """
    if emap.slots_of(site) != {QubitSlot.A, QubitSlot.B}:
        raise EmbeddingError(f"site {site} does not host a full qubit pair")
    return LevelPairGate(site, 0, 3, PAULI_Z)


def decode_basis_label(label, emap: EmbeddingMap) -> str | None:
    """Qubit bitstring stored in a register basis label, or ``None`` if the
    label has probability on a non-computational configuration.

    Bystander bits are dropped; work sites must sit at level 0.
    """
    label = tuple(label)
    if len(label) != emap.register.num_sites:
        raise ValueError(
            f"label has {len(label)} digits, register has "
            f"{emap.register.num_sites} sites"
        )
    bits = []
    for site, slot in emap.assignments:
        level = label[site]
        if slot is QubitSlot.SINGLE:
            if level > 1:
                return None
            bits.append(level)
        else:
            if level > 3:
                return None
            bits.append(level // 2 if slot is QubitSlot.A else level % 2)
    for site in emap.work_sites:
        if label[site] != 0:
            return None
    for site in emap.bystander_sites:
        if label[site] > 3:
            return None
    return "".join(str(b) for b in bits)


@dataclass(frozen=True)
class QubitReadout:
    """Qubit-level measurement table plus unaccounted probability mass."""

    probabilities: dict[str, float]
    leakage: float

    def top_outcome(self) -> str:
        return max(self.probabilities, key=lambda k: self.probabilities[k])


def _site_digits(register: QuditRegister) -> list[np.ndarray]:
    idx = np.arange(register.size)
    return [
        (idx // stride) % dim for stride, dim in zip(register.strides, register.dims)
    ]


def decodable_mask(emap: EmbeddingMap) -> np.ndarray:
    """Boolean mask of basis states representing a valid qubit configuration.

    Pair-hosting sites (including bystanders) must be below level 4, SINGLE
    sites below level 2, and work sites exactly at level 0.
    """
    digits = _site_digits(emap.register)
    mask = np.ones(emap.register.size, dtype=bool)
    for site in range(emap.register.num_sites):
        slots = emap.slots_of(site)
        if not slots:
            mask &= digits[site] == 0
        elif slots == {QubitSlot.SINGLE}:
            mask &= digits[site] <= 1
        else:
            mask &= digits[site] <= 3
    return mask


def read_out(probabilities: np.ndarray, emap: EmbeddingMap) -> QubitReadout:
    """Marginalize register outcome probabilities to qubit bitstrings.

    Bystander bits are summed over; probability on any non-computational
    configuration is returned as leakage.
    """
    probs = np.asarray(probabilities, dtype=float)
    if probs.shape != (emap.register.size,):
        raise ValueError(
            f"probability vector has shape {probs.shape}, register size is "
            f"{emap.register.size}"
        )
    digits = _site_digits(emap.register)
    n = emap.qubit_count
    out_index = np.zeros(emap.register.size, dtype=np.int64)
    for q, (site, slot) in enumerate(emap.assignments):
        if slot is QubitSlot.A:
            bit = digits[site] // 2
        else:
            bit = digits[site] % 2
        out_index |= (bit.astype(np.int64) & 1) << (n - 1 - q)
    mask = decodable_mask(emap)
    table = np.bincount(out_index[mask], weights=probs[mask], minlength=2**n)
    leakage = float(probs[~mask].sum())
    labels = {format(i, f"0{n}b"): float(p) for i, p in enumerate(table)}
    return QubitReadout(labels, leakage)
