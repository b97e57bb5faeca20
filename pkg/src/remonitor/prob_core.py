"""Finite-alphabet probability: distributions, channels, joints, entropies.

Structural arithmetic (sums, products, marginals, compositions) is carried out
on whatever scalar type the inputs use. Exact inputs are ``fractions.Fraction``
and stay exact; floats stay floats. Logarithms are the only place exact values
are evaluated in floating point, and they are always base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence, Union

Scalar = Union[Fraction, float]
Label = Hashable

FLOAT_TOL = 1e-9


class ProbabilityError(ValueError):
    """A probability object violates its invariants."""


class AlphabetMismatch(ProbabilityError):
    """Two objects disagree on an alphabet they are supposed to share."""


def to_scalar(value, exact: bool = True) -> Scalar:
    """Parse ``value`` into a probability scalar.

    Strings of the form ``"p/q"`` and integers become ``Fraction``. Floats are
    read through their decimal repr in exact mode (``0.9`` -> ``9/10``), which
    is what a JSON literal means; in float mode everything becomes ``float``.
    """
    if isinstance(value, bool):
        raise ProbabilityError(f"not a probability: {value!r}")
    if isinstance(value, Fraction):
        out: Scalar = value
    elif isinstance(value, int):
        out = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ProbabilityError(f"not a finite number: {value!r}")
        out = Fraction(repr(value)) if exact else value
    elif isinstance(value, str):
        text = value.strip()
        try:
            out = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ProbabilityError(f"cannot parse rational {value!r}") from exc
    else:
        raise ProbabilityError(f"unsupported scalar {value!r}")
    if not exact:
        return float(out)
    return out


def is_exact(values: Iterable[Scalar]) -> bool:
    return all(isinstance(v, (Fraction, int)) for v in values)


def format_scalar(value: Scalar) -> str | float:
    """Serialize a scalar: rationals as ``"p/q"`` strings, floats as numbers."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return float(value)


def _check_masses(masses: Sequence[Scalar], what: str, tol: float) -> None:
    if not all(isinstance(m, (int, float, Fraction)) and not isinstance(m, bool) for m in masses):
        raise ProbabilityError(f"{what}: masses must be numbers (parse strings with to_scalar)")
    if any(isinstance(m, float) and not math.isfinite(m) for m in masses):
        raise ProbabilityError(f"{what}: non-finite mass")
    kinds = {isinstance(m, float) for m in masses}
    if len(kinds) > 1:
        raise ProbabilityError(f"{what}: mixes exact and float masses")
    if any(m < 0 for m in masses):
        raise ProbabilityError(f"{what}: negative mass")
    total = sum(masses)
    if is_exact(masses):
        if total != 1:
            raise ProbabilityError(f"{what}: row not stochastic (sums to {total})")
    elif abs(total - 1) > tol:
        raise ProbabilityError(f"{what}: row not stochastic (sums to {float(total)!r})")


def _check_alphabet(alphabet: Sequence[Label], what: str) -> None:
    if len(alphabet) == 0:
        raise ProbabilityError(f"{what}: empty alphabet")
    if len(set(alphabet)) != len(alphabet):
        raise ProbabilityError(f"{what}: duplicate labels in {list(alphabet)}")


@dataclass(frozen=True)
class Distribution:
    alphabet: tuple
    masses: tuple

    def __init__(self, alphabet: Sequence[Label], masses: Sequence[Scalar], tol: float = FLOAT_TOL):
        alphabet = tuple(alphabet)
        masses = tuple(masses)
        _check_alphabet(alphabet, "distribution")
        if len(alphabet) != len(masses):
            raise ProbabilityError("distribution: alphabet and masses differ in length")
        _check_masses(masses, "distribution", tol)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def from_mapping(cls, mapping: Mapping[Label, Scalar], tol: float = FLOAT_TOL) -> "Distribution":
        return cls(list(mapping), list(mapping.values()), tol=tol)

    @classmethod
    def uniform(cls, alphabet: Sequence[Label], exact: bool = True) -> "Distribution":
        n = len(alphabet)
        mass = Fraction(1, n) if exact else 1.0 / n
        return cls(alphabet, [mass] * n)

    @classmethod
    def point(cls, alphabet: Sequence[Label], label: Label, exact: bool = True) -> "Distribution":
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        return cls(alphabet, [one if a == label else zero for a in alphabet])

    @property
    def exact(self) -> bool:
        return is_exact(self.masses)

    def __getitem__(self, label: Label) -> Scalar:
        try:
            return self.masses[self.alphabet.index(label)]
        except ValueError:
            raise KeyError(label) from None

    def __len__(self) -> int:
        return len(self.alphabet)

    def items(self):
        return zip(self.alphabet, self.masses)

    def as_dict(self) -> dict:
        return dict(self.items())

    def support(self) -> frozenset:
        return frozenset(a for a, m in self.items() if m > 0)


@dataclass(frozen=True)
class Channel:
    """Row-stochastic matrix ``W[input][output]`` over labeled alphabets."""

    input_alphabet: tuple
    output_alphabet: tuple
    rows: tuple

    def __init__(
        self,
        input_alphabet: Sequence[Label],
        output_alphabet: Sequence[Label],
        rows: Sequence[Sequence[Scalar]],
        tol: float = FLOAT_TOL,
    ):
        input_alphabet = tuple(input_alphabet)
        output_alphabet = tuple(output_alphabet)
        _check_alphabet(input_alphabet, "channel input")
        _check_alphabet(output_alphabet, "channel output")
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != len(input_alphabet):
            raise ProbabilityError(
                f"channel: {len(rows)} rows for {len(input_alphabet)} inputs"
            )
        for a, row in zip(input_alphabet, rows):
            if len(row) != len(output_alphabet):
                raise ProbabilityError(
                    f"channel row {a!r}: {len(row)} entries for {len(output_alphabet)} outputs"
                )
            _check_masses(row, f"channel row {a!r}", tol)
        object.__setattr__(self, "input_alphabet", input_alphabet)
        object.__setattr__(self, "output_alphabet", output_alphabet)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_mapping(
        cls,
        rows: Mapping[Label, Mapping[Label, Scalar]],
        output_alphabet: Sequence[Label] | None = None,
        tol: float = FLOAT_TOL,
    ) -> "Channel":
        """Build from ``{input: {output: prob}}``; missing outputs are zero."""
        inputs = list(rows)
        if output_alphabet is None:
            output_alphabet = []
            for row in rows.values():
                for y in row:
                    if y not in output_alphabet:
                        output_alphabet.append(y)
        exact = all(is_exact(r.values()) for r in rows.values())
        zero = Fraction(0) if exact else 0.0
        matrix = [[rows[a].get(y, zero) for y in output_alphabet] for a in inputs]
        return cls(inputs, output_alphabet, matrix, tol=tol)

    @classmethod
    def identity(cls, alphabet: Sequence[Label], exact: bool = True) -> "Channel":
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        return cls(alphabet, alphabet, [[one if a == b else zero for b in alphabet] for a in alphabet])

    @classmethod
    def deterministic(cls, mapping: Mapping[Label, Label], output_alphabet: Sequence[Label] | None = None) -> "Channel":
        if output_alphabet is None:
            output_alphabet = list(dict.fromkeys(mapping.values()))
        return cls(
            list(mapping),
            output_alphabet,
            [[Fraction(int(mapping[a] == y)) for y in output_alphabet] for a in mapping],
        )

    @property
    def exact(self) -> bool:
        return all(is_exact(r) for r in self.rows)

    def row(self, label: Label) -> Distribution:
        return Distribution(self.output_alphabet, self.rows[self.input_alphabet.index(label)])

    def prob(self, output: Label, given: Label) -> Scalar:
        return self.rows[self.input_alphabet.index(given)][self.output_alphabet.index(output)]

    def support(self, label: Label) -> frozenset:
        row = self.rows[self.input_alphabet.index(label)]
        return frozenset(y for y, m in zip(self.output_alphabet, row) if m > 0)

    def to_float(self) -> "Channel":
        return Channel(self.input_alphabet, self.output_alphabet, [[float(v) for v in r] for r in self.rows])


@dataclass(frozen=True)
class JointDistribution:
    """Joint law over named factors, stored sparsely as ``{tuple: mass}``."""

    factors: tuple
    alphabets: tuple
    mass: Mapping

    def __init__(
        self,
        factors: Sequence[str],
        alphabets: Sequence[Sequence[Label]],
        mass: Mapping[tuple, Scalar],
        tol: float = FLOAT_TOL,
    ):
        factors = tuple(factors)
        alphabets = tuple(tuple(a) for a in alphabets)
        if len(factors) != len(alphabets):
            raise ProbabilityError("joint: one alphabet per factor required")
        if len(set(factors)) != len(factors):
            raise ProbabilityError(f"joint: duplicate factor names {factors}")
        for name, alphabet in zip(factors, alphabets):
            _check_alphabet(alphabet, f"joint factor {name!r}")
        lookup = [set(a) for a in alphabets]
        for cell in mass:
            if len(cell) != len(factors) or any(v not in s for v, s in zip(cell, lookup)):
                raise ProbabilityError(f"joint: cell {cell!r} outside the alphabets")
        _check_masses(list(mass.values()) or [0], "joint", tol)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "alphabets", alphabets)
        object.__setattr__(self, "mass", dict(mass))

    def _index(self, name: str) -> int:
        try:
            return self.factors.index(name)
        except ValueError:
            raise KeyError(f"unknown factor {name!r}; have {list(self.factors)}") from None

    def alphabet(self, name: str) -> tuple:
        return self.alphabets[self._index(name)]

    def marginal(self, *names: str) -> "JointDistribution":
        idx = [self._index(n) for n in names]
        out: dict = {}
        for cell, m in self.mass.items():
            key = tuple(cell[i] for i in idx)
            out[key] = out.get(key, 0) + m
        return JointDistribution(names, [self.alphabets[i] for i in idx], out)

    def distribution(self, name: str) -> Distribution:
        """Marginal of a single factor as a ``Distribution`` over its alphabet."""
        m = self.marginal(name).mass
        exact = is_exact(self.mass.values())
        zero = Fraction(0) if exact else 0.0
        alphabet = self.alphabet(name)
        return Distribution(alphabet, [m.get((a,), zero) for a in alphabet])

    def conditional(self, target: str, given: str) -> Channel:
        """Channel ``given -> Δ(target)``; inputs with zero mass are dropped."""
        pair = self.marginal(given, target).mass
        given_m = self.marginal(given).mass
        exact = is_exact(self.mass.values())
        zero = Fraction(0) if exact else 0.0
        inputs = [g for g in self.alphabet(given) if given_m.get((g,), 0) > 0]
        rows = [
            [pair.get((g, t), zero) / given_m[(g,)] for t in self.alphabet(target)]
            for g in inputs
        ]
        return Channel(inputs, self.alphabet(target), rows)


def marginalize(j: JointDistribution, factor: str) -> Distribution:
    return j.distribution(factor)


def _plogp_sum(masses: Iterable[Scalar]) -> float:
    return -sum(float(m) * math.log2(float(m)) for m in masses if m > 0)


def entropy(d: Distribution | Iterable[Scalar]) -> float:
    masses = d.masses if isinstance(d, Distribution) else tuple(d)
    h = _plogp_sum(masses)
    return h if h > 0 else 0.0


def joint_entropy(j: JointDistribution, *names: str) -> float:
    masses = j.marginal(*names).mass.values() if names else j.mass.values()
    return entropy(masses)


def conditional_entropy(j: JointDistribution, target: str, given: str) -> float:
    """H(target | given) = H(target, given) - H(given), in bits."""
    if target == given:
        j._index(target)
        return 0.0
    h = joint_entropy(j, target, given) - joint_entropy(j, given)
    return max(h, 0.0)


def joint_from_channel(input: Distribution, ch: Channel, names: tuple[str, str] = ("X", "Y")) -> JointDistribution:
    if tuple(input.alphabet) != tuple(ch.input_alphabet):
        raise AlphabetMismatch(
            f"input alphabet {list(input.alphabet)} != channel input {list(ch.input_alphabet)}"
        )
    mass = {}
    for x, px, row in zip(input.alphabet, input.masses, ch.rows):
        for y, w in zip(ch.output_alphabet, row):
            if px * w > 0:
                mass[(x, y)] = px * w
    return JointDistribution(names, [input.alphabet, ch.output_alphabet], mass)


def mutual_information(input: Distribution, ch: Channel) -> float:
    """I(X;Y) = H(Y) - H(Y|X) in bits for ``X ~ input`` sent through ``ch``."""
    j = joint_from_channel(input, ch)
    h_y = joint_entropy(j, "Y")
    h_y_given_x = sum(float(px) * entropy(row) for px, row in zip(input.masses, ch.rows) if px > 0)
    return max(h_y - h_y_given_x, 0.0)


def output_distribution(input: Distribution, ch: Channel) -> Distribution:
    if tuple(input.alphabet) != tuple(ch.input_alphabet):
        raise AlphabetMismatch("input alphabet does not match channel")
    masses = [
        sum(px * row[k] for px, row in zip(input.masses, ch.rows))
        for k in range(len(ch.output_alphabet))
    ]
    return Distribution(ch.output_alphabet, masses)


def compose(ch1: Channel, ch2: Channel) -> Channel:
    """Cascade ``ch1`` then ``ch2``: (ch2∘ch1)(c|a) = Σ_b ch2(c|b) ch1(b|a)."""
    if tuple(ch1.output_alphabet) != tuple(ch2.input_alphabet):
        raise AlphabetMismatch(
            f"cannot compose: {list(ch1.output_alphabet)} -> {list(ch2.input_alphabet)}"
        )
    rows = []
    for row in ch1.rows:
        rows.append([
            sum(row[b] * ch2.rows[b][c] for b in range(len(row)))
            for c in range(len(ch2.output_alphabet))
        ])
    return Channel(ch1.input_alphabet, ch2.output_alphabet, rows)


def push_forward(ch: Channel, mapping: Mapping[Label, Label], output_alphabet: Sequence[Label] | None = None) -> Channel:
    """Merge output columns of ``ch`` according to ``mapping``."""
    missing = [y for y in ch.output_alphabet if y not in mapping]
    if missing:
        raise ProbabilityError(f"map is not total: no image for {missing}")
    if output_alphabet is None:
        output_alphabet = list(dict.fromkeys(mapping[y] for y in ch.output_alphabet))
    else:
        output_alphabet = list(output_alphabet)
        stray = {mapping[y] for y in ch.output_alphabet} - set(output_alphabet)
        if stray:
            raise AlphabetMismatch(f"map images {sorted(map(str, stray))} not in output alphabet")
    col = {r: k for k, r in enumerate(output_alphabet)}
    zero = Fraction(0) if ch.exact else 0.0
    rows = []
    for row in ch.rows:
        merged = [zero] * len(output_alphabet)
        for y, w in zip(ch.output_alphabet, row):
            merged[col[mapping[y]]] += w
        rows.append(merged)
    return Channel(ch.input_alphabet, output_alphabet, rows)


def product_channel(channels: Sequence[Channel]) -> Channel:
    """Conditionally independent outputs: ``(y_1, ..., y_k) | a``. Output labels are tuples."""
    inputs = channels[0].input_alphabet
    for ch in channels[1:]:
        if tuple(ch.input_alphabet) != tuple(inputs):
            raise AlphabetMismatch("product channel needs a common input alphabet")
    outputs = [()]
    for ch in channels:
        outputs = [o + (y,) for o in outputs for y in ch.output_alphabet]
    rows = []
    for i in range(len(inputs)):
        row = []
        for out in outputs:
            m = 1
            for ch, y in zip(channels, out):
                m = m * ch.rows[i][ch.output_alphabet.index(y)]
            row.append(m)
        rows.append(row)
    return Channel(inputs, outputs, rows)
