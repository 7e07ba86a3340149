"""Gate patterns: resources, joint-measurement groups and correction tables.

A :class:`GatePattern` is the full recipe implementing one logical gate by
measurement alone: which register qubits carry the inputs, which ancilla
subsets are prepared in which entangled states, which ordered groups of
qubits are jointly measured in which orthonormal bases, which wires carry
the result, and (when known) which correction operator repairs each
measurement outcome.

Outcome labels are tuples in the written order of the basis construction,
bits first and the branch sign last, e.g. ``(0, 1, "+")``; correction tables
are keyed by one label per group in declared group order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from itertools import product

import numpy as np

from . import statevec as sv
from .gates import CZ, I2, PHASE, SX, SZ

Label = tuple
OutcomeKey = tuple


class PatternFormatError(ValueError):
    """A pattern document or pattern structure violates the schema."""


ELEMENTARY_OPS: dict[str, np.ndarray] = {
    "I": I2,
    "sx": SX,
    "sz": SZ,
    "Up": PHASE,
    "Ucz": CZ,
    # Controlled-X, control = first tagged wire. Needed by the three-qubit
    # gate corrections: their targets sit outside the Clifford group, so
    # some measurement byproducts conjugate into two-qubit Clifford
    # recoveries rather than Pauli strings.
    "Ucx": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}

ENTANGLING_OPS = ("Ucz", "Ucx")


def _embed(op: np.ndarray, wires: tuple[int, ...], num_wires: int) -> np.ndarray:
    """Operator acting as ``op`` on ``wires`` and identity elsewhere."""
    n, k = num_wires, len(wires)
    t = np.eye(1 << n, dtype=complex).reshape([2] * n + [1 << n])
    t = np.moveaxis(t, wires, range(k))
    m = op @ t.reshape(1 << k, -1)
    t = m.reshape([2] * n + [1 << n])
    t = np.moveaxis(t, range(k), wires)
    return t.reshape(1 << n, 1 << n)


@dataclass(frozen=True)
class CorrectionOp:
    """Product of named elementary operators on the output wires.

    ``factors`` lists (name, wires) pairs in matrix order: the leftmost
    factor is the last one applied to the state, matching the way operator
    products are written.
    """

    factors: tuple[tuple[str, tuple[int, ...]], ...]

    @staticmethod
    def identity() -> "CorrectionOp":
        return CorrectionOp(())

    @staticmethod
    def from_wire_products(
        wire_tails: tuple[tuple[str, ...], ...],
        cz_prefix: bool = False,
        cz_pairs: tuple[tuple[int, int], ...] = (),
    ) -> "CorrectionOp":
        """Tensor product of per-wire factor chains, optionally left-composed
        with controlled-Z factors on output-wire pairs (``cz_prefix`` is the
        two-wire shorthand for ``cz_pairs=((0, 1),)``)."""
        if cz_prefix:
            if len(wire_tails) != 2:
                raise PatternFormatError("Ucz prefix requires exactly two output wires")
            cz_pairs = ((0, 1),) + tuple(cz_pairs)
        factors: list[tuple[str, tuple[int, ...]]] = [
            ("Ucz", tuple(pair)) for pair in cz_pairs
        ]
        for wire, tail in enumerate(wire_tails):
            for name in tail:
                if name != "I":
                    factors.append((name, (wire,)))
        return CorrectionOp(tuple(factors))

    def matrix(self, num_wires: int) -> np.ndarray:
        out = np.eye(1 << num_wires, dtype=complex)
        for name, wires in self.factors:
            try:
                op = ELEMENTARY_OPS[name]
            except KeyError:
                raise PatternFormatError(f"unknown correction factor {name!r}") from None
            out = out @ _embed(op, wires, num_wires)
        return out

    @property
    def weight(self) -> int:
        """Number of non-identity elementary factors."""
        return sum(1 for name, _ in self.factors if name != "I")

    def render(self, num_wires: int) -> str:
        """Compact display, e.g. ``Ucz(sz.Up x I)`` or ``sx x sz.sx``;
        entangling factors on three or more wires name their pair, as in
        ``Ucx[1,2](I x I x sz)``."""
        factors = list(self.factors)
        pairs: list[tuple[str, tuple[int, ...]]] = []
        while factors and factors[0][0] in ENTANGLING_OPS:
            pairs.append(factors[0])
            factors = factors[1:]
        if any(len(w) != 1 for _, w in factors):
            chain = ".".join(f"{n}@{w}" for n, w in self.factors)
            return chain or "I"
        tails: list[list[str]] = [[] for _ in range(num_wires)]
        for name, (wire,) in factors:
            tails[wire].append(name)
        body = " x ".join(".".join(t) if t else "I" for t in tails)
        if not pairs:
            return body
        if num_wires == 2 and pairs == [("Ucz", (0, 1))]:
            return f"Ucz({body})"
        prefix = "".join(f"{name}[{i},{j}]" for name, (i, j) in pairs)
        return f"{prefix}({body})"


@dataclass
class CorrectionTable:
    """Map from one-outcome-label-per-group tuples to correction operators."""

    entries: dict[OutcomeKey, CorrectionOp]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: OutcomeKey) -> CorrectionOp:
        return self.entries[key]

    def keys(self):
        return self.entries.keys()


@dataclass(frozen=True)
class MeasurementGroup:
    """Ordered qubit subset plus a complete joint basis with outcome labels."""

    qubits: tuple[int, ...]
    basis: sv.MeasurementBasis
    labels: tuple[Label, ...]

    @property
    def size(self) -> int:
        return self.basis.size

    def label_index(self, label: Label) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class GatePattern:
    """One gate construction: wiring, resources, measurements, corrections."""

    name: str
    num_qubits: int
    input_wires: tuple[int, ...]
    resources: tuple[tuple[tuple[int, ...], sv.StateVector], ...]
    groups: tuple[MeasurementGroup, ...]
    output_wires: tuple[int, ...]
    target: np.ndarray
    corrections: CorrectionTable | None = None
    vocabulary: str = "pauli_phase"  # correction vocabulary hint for derivation
    variant: str = ""                # basis-variant note, when applicable

    @property
    def num_outputs(self) -> int:
        return len(self.output_wires)

    @property
    def outcome_keys(self) -> list[OutcomeKey]:
        return [tuple(combo) for combo in product(*(g.labels for g in self.groups))]

    def with_target(self, target: np.ndarray) -> "GatePattern":
        return replace(self, target=np.asarray(target, dtype=complex), corrections=None)

    def with_corrections(self, table: CorrectionTable | None) -> "GatePattern":
        return replace(self, corrections=table)


def validate_pattern(pattern: GatePattern) -> None:
    """Check the wiring, basis and correction invariants; raise on violation."""
    n = pattern.num_qubits
    sv.check_subset(pattern.input_wires, n)
    seen: dict[int, str] = {q: "input" for q in pattern.input_wires}
    for qubits, state in pattern.resources:
        sv.check_subset(qubits, n)
        for q in qubits:
            if q in seen:
                raise PatternFormatError(
                    f"qubit {q} declared by both {seen[q]} and a resource"
                )
            seen[q] = "resource"
        if state.num_qubits != len(qubits):
            raise PatternFormatError(
                f"resource on qubits {qubits} has a {state.num_qubits}-qubit state"
            )
    if set(seen) != set(range(n)):
        missing = sorted(set(range(n)) - set(seen))
        raise PatternFormatError(f"register qubits {missing} have no preparation")

    measured: dict[int, int] = {}
    for gi, group in enumerate(pattern.groups):
        sv.check_subset(group.qubits, n)
        for q in group.qubits:
            if q in measured:
                raise PatternFormatError(
                    f"qubit {q} measured by both group {measured[q]} and group {gi}"
                )
            measured[q] = gi
        report = sv.validate_basis(group.basis)
        if report.vector_count != report.expected_count:
            raise PatternFormatError(
                f"group {gi} basis has {report.vector_count} vectors, "
                f"expected {report.expected_count} (completeness violation)"
            )
        if not report.passed:
            raise PatternFormatError(
                f"group {gi} basis is not orthonormal "
                f"(max overlap {report.max_pairwise_overlap:.3e}, "
                f"max norm deviation {report.max_norm_deviation:.3e})"
            )
        if len(group.labels) != group.size or len(set(group.labels)) != group.size:
            raise PatternFormatError(
                f"group {gi} labels are not a bijection onto its basis vectors"
            )

    outputs = set(pattern.output_wires)
    if outputs & set(measured):
        clash = sorted(outputs & set(measured))
        raise PatternFormatError(f"output wires {clash} are also measured")
    leftover = set(range(n)) - set(measured) - outputs
    if leftover:
        raise PatternFormatError(
            f"register qubits {sorted(leftover)} are neither measured nor outputs"
        )

    target = np.asarray(pattern.target)
    if target.shape != (1 << len(pattern.output_wires),) * 2:
        raise PatternFormatError(
            f"target of shape {target.shape} does not act on "
            f"{len(pattern.output_wires)} output wires"
        )
    if not sv.is_unitary(target):
        raise PatternFormatError("target matrix is not unitary")

    if pattern.corrections is not None:
        expected = 1
        for g in pattern.groups:
            expected *= g.size
        if len(pattern.corrections) != expected:
            raise PatternFormatError(
                f"correction table has {len(pattern.corrections)} entries, "
                f"expected {expected}"
            )
        for key in pattern.corrections.keys():
            if len(key) != len(pattern.groups):
                raise PatternFormatError(f"correction key {key} has wrong arity")
            for label, group in zip(key, pattern.groups):
                if label not in group.labels:
                    raise PatternFormatError(
                        f"correction key {key} uses unknown label {label}"
                    )


def patterns_equal(a: GatePattern, b: GatePattern, atol: float = 1e-12) -> bool:
    """Structural equality up to amplitude tolerance (names ignored)."""
    if (
        a.num_qubits != b.num_qubits
        or a.input_wires != b.input_wires
        or a.output_wires != b.output_wires
        or len(a.resources) != len(b.resources)
        or len(a.groups) != len(b.groups)
    ):
        return False
    for (qa, sa), (qb, sb) in zip(a.resources, b.resources):
        if qa != qb or not np.allclose(sa.amps, sb.amps, atol=atol):
            return False
    for ga, gb in zip(a.groups, b.groups):
        if ga.qubits != gb.qubits or ga.labels != gb.labels:
            return False
        if not np.allclose(ga.basis.vectors, gb.basis.vectors, atol=atol):
            return False
    return bool(np.allclose(a.target, b.target, atol=atol))


# ---------------------------------------------------------------------------
# Pattern document format (JSON)
# ---------------------------------------------------------------------------

def _terms_of(amps: np.ndarray, num_qubits: int) -> list[dict]:
    terms = []
    for idx in np.flatnonzero(np.abs(amps) > 1e-14):
        coeff = amps[int(idx)]
        terms.append(
            {"coeff": [coeff.real, coeff.imag], "bits": format(int(idx), f"0{num_qubits}b")}
        )
    return terms


def _state_of(terms: list[dict], num_qubits: int, where: str) -> sv.StateVector:
    parsed = []
    for term in terms:
        try:
            re, im = term["coeff"]
            bits = term["bits"]
        except (KeyError, TypeError, ValueError) as exc:
            raise PatternFormatError(f"malformed term in {where}: {term!r}") from exc
        parsed.append((complex(re, im), bits))
    try:
        return sv.from_ket_expression(num_qubits, parsed)
    except (sv.UsageError, sv.DegenerateStateError) as exc:
        raise PatternFormatError(f"bad state in {where}: {exc}") from exc


def _label_of(raw) -> Label:
    if not isinstance(raw, list):
        raise PatternFormatError(f"label {raw!r} is not a list")
    return tuple(raw)


def pattern_to_document(pattern: GatePattern) -> dict:
    doc = {
        "name": pattern.name,
        "num_qubits": pattern.num_qubits,
        "inputs": list(pattern.input_wires),
        "resources": [
            {"qubits": list(qubits), "terms": _terms_of(state.amps, state.num_qubits)}
            for qubits, state in pattern.resources
        ],
        "groups": [
            {
                "qubits": list(g.qubits),
                "vectors": [
                    {
                        "label": list(g.labels[i]),
                        "terms": _terms_of(g.basis.vectors[i], g.basis.num_qubits),
                    }
                    for i in range(g.size)
                ],
            }
            for g in pattern.groups
        ],
        "outputs": list(pattern.output_wires),
        "target": {
            "dim": pattern.target.shape[0],
            "entries": [[[z.real, z.imag] for z in row] for row in pattern.target],
        },
        "vocabulary": pattern.vocabulary,
    }
    if pattern.variant:
        doc["variant"] = pattern.variant
    if pattern.corrections is not None:
        doc["corrections"] = [
            {
                "labels": [list(label) for label in key],
                "ops": [{"name": name, "wires": list(wires)} for name, wires in op.factors],
            }
            for key, op in pattern.corrections.entries.items()
        ]
    return doc


def pattern_from_document(doc: dict) -> GatePattern:
    try:
        name = doc["name"]
        num_qubits = int(doc["num_qubits"])
        inputs = tuple(int(q) for q in doc["inputs"])
        outputs = tuple(int(q) for q in doc["outputs"])
        raw_resources = doc["resources"]
        raw_groups = doc["groups"]
        raw_target = doc["target"]
    except (KeyError, TypeError, ValueError) as exc:
        raise PatternFormatError(f"missing or malformed field: {exc}") from exc

    resources = []
    for ri, res in enumerate(raw_resources):
        qubits = tuple(int(q) for q in res["qubits"])
        state = _state_of(res["terms"], len(qubits), f"resource {ri}")
        resources.append((qubits, state))

    groups = []
    for gi, grp in enumerate(raw_groups):
        qubits = tuple(int(q) for q in grp["qubits"])
        labels = []
        states = []
        for vec in grp["vectors"]:
            labels.append(_label_of(vec["label"]))
            states.append(_state_of(vec["terms"], len(qubits), f"group {gi}"))
        groups.append(
            MeasurementGroup(qubits, sv.basis_from_states(states), tuple(labels))
        )

    dim = int(raw_target["dim"])
    entries = raw_target["entries"]
    if len(entries) != dim or any(len(row) != dim for row in entries):
        raise PatternFormatError("target entries do not form a dim x dim matrix")
    target = np.array(
        [[complex(re, im) for re, im in row] for row in entries], dtype=complex
    )

    corrections = None
    if "corrections" in doc:
        table: dict[OutcomeKey, CorrectionOp] = {}
        for cell in doc["corrections"]:
            key = tuple(_label_of(label) for label in cell["labels"])
            factors = tuple(
                (op["name"], tuple(int(w) for w in op["wires"])) for op in cell["ops"]
            )
            table[key] = CorrectionOp(factors)
        corrections = CorrectionTable(table)

    pattern = GatePattern(
        name=name,
        num_qubits=num_qubits,
        input_wires=inputs,
        resources=tuple(resources),
        groups=tuple(groups),
        output_wires=outputs,
        target=target,
        corrections=corrections,
        vocabulary=doc.get("vocabulary", "pauli_phase"),
        variant=doc.get("variant", ""),
    )
    validate_pattern(pattern)
    return pattern


def save_pattern(pattern: GatePattern, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pattern_to_document(pattern), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_pattern(path) -> GatePattern:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PatternFormatError(f"not a valid pattern document: {exc}") from exc
    return pattern_from_document(doc)
