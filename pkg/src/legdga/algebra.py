"""Free unital associative Z2 algebras with a Leibniz differential.

A monomial is a tuple of generator names (the empty tuple is 1); a
polynomial is a frozenset of monomials, i.e. coefficients live in Z2 and
addition is symmetric difference.  A FreeDGA fixes an ordered generator
tuple, a differential per generator, and optionally a grading: a modulus m
(0 meaning the integers) with a degree per generator.

Tame maps are composites of elementary substitutions a -> a + u (with u not
mentioning a; such a map is its own inverse over Z2) and bijective renamings.
The conjugated differential g d g^{-1} of a tame map is again a differential.
Stable tame isomorphism is supported as witness checking only: given two
algebras, stabilization counts and a tame map, `is_dga_isomorphism` verifies
the map intertwines the differentials.  No search for such a witness is
attempted here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DiagramFormatError, SelfReference, UnknownGenerator

Monomial = tuple[str, ...]


class Poly:
    """Element of the free Z2 algebra: a set of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial] = ()):
        acc: set[Monomial] = set()
        for t in terms:
            t = tuple(t)
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
        self.terms = frozenset(acc)

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly([()])

    @staticmethod
    def gen(name: str) -> "Poly":
        return Poly([(name,)])

    @staticmethod
    def word(*names: str) -> "Poly":
        return Poly([tuple(names)])

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.terms ^ other.terms)

    def __mul__(self, other: "Poly") -> "Poly":
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                ab = a + b
                if ab in acc:
                    acc.remove(ab)
                else:
                    acc.add(ab)
        return Poly(acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def mentions(self, name: str) -> bool:
        return any(name in t for t in self.terms)

    def generators_used(self) -> set[str]:
        return {g for t in self.terms for g in t}

    def word_length_part(self, length: int) -> "Poly":
        return Poly(t for t in self.terms if len(t) == length)

    def max_length(self) -> int:
        return max((len(t) for t in self.terms), default=0)

    def substitute(self, name: str, value: "Poly") -> "Poly":
        """Replace every occurrence of a generator by a polynomial."""
        out = Poly()
        for t in self.terms:
            prod = Poly.one()
            for g in t:
                prod = prod * (value if g == name else Poly.gen(g))
            out = out + prod
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return Poly(tuple(mapping.get(g, g) for g in t) for t in self.terms)

    def sorted_terms(self, order: Iterable[str]) -> list[Monomial]:
        index = {g: i for i, g in enumerate(order)}
        return sorted(
            self.terms, key=lambda t: (len(t), [index.get(g, len(index)) for g in t])
        )

    def format(self, order: Iterable[str]) -> str:
        terms = self.sorted_terms(order)
        if not terms:
            return "0"
        return " + ".join("1" if not t else "*".join(t) for t in terms)

    def __repr__(self):
        gens = sorted(self.generators_used())
        return f"Poly({self.format(gens)})"


@dataclass(frozen=True)
class FreeDGA:
    """Free differential algebra with explicit generators.

    ``modulus`` is None for an ungraded algebra, 0 for integer grading, or a
    positive integer m for Z/m grading; ``degrees`` maps each generator to
    its degree (least nonnegative residue when m > 0).
    """

    generators: tuple[str, ...]
    diff: Mapping[str, Poly]
    modulus: int | None = None
    degrees: Mapping[str, int] | None = field(default=None)

    def __post_init__(self):
        if set(self.diff) != set(self.generators):
            raise UnknownGenerator("differential must cover exactly the generators")
        for g, p in self.diff.items():
            unknown = p.generators_used() - set(self.generators)
            if unknown:
                raise UnknownGenerator(f"d({g}) mentions {sorted(unknown)}")
        if (self.modulus is None) != (self.degrees is None):
            raise ValueError("modulus and degrees go together")
        if self.degrees is not None and set(self.degrees) != set(self.generators):
            raise ValueError("degrees must cover exactly the generators")

    def d(self, x: Poly) -> Poly:
        """Leibniz extension of the generator differentials."""
        unknown = x.generators_used() - set(self.generators)
        if unknown:
            raise UnknownGenerator(f"polynomial mentions {sorted(unknown)}")
        out = Poly()
        for t in x.terms:
            for i, g in enumerate(t):
                head = Poly([t[:i]])
                tail = Poly([t[i + 1:]])
                out = out + head * self.diff[g] * tail
        return out

    def degree_of_word(self, word: Monomial) -> int:
        assert self.degrees is not None
        total = sum(self.degrees[g] for g in word)
        return total % self.modulus if self.modulus else total


def apply_d(algebra: FreeDGA, x: Poly) -> Poly:
    return algebra.d(x)


def check_d_squared(algebra: FreeDGA):
    """First generator with d(d(a)) != 0 in the generator order, else None."""
    for g in algebra.generators:
        if algebra.d(algebra.diff[g]):
            return g
    return None


def check_triangular(algebra: FreeDGA, order: Iterable[str]):
    """None if each d(a) mentions only generators strictly earlier in order,
    else the first witness generator."""
    seen: set[str] = set()
    for g in order:
        if algebra.diff[g].generators_used() - seen:
            return g
        seen.add(g)
    return None


def check_degree(algebra: FreeDGA):
    """None if every monomial of every d(a) has degree deg(a) - 1, else a
    witness (generator, monomial)."""
    if algebra.degrees is None:
        raise ValueError("ungraded algebra")
    m = algebra.modulus
    for g in algebra.generators:
        want = algebra.degrees[g] - 1
        if m:
            want %= m
        for t in algebra.diff[g].terms:
            if algebra.degree_of_word(t) != want:
                return g, t
    return None


def _fresh(base: str, used: set[str]) -> str:
    name = base
    while name in used:
        name += "'"
    return name


def coproduct(a: FreeDGA, b: FreeDGA) -> FreeDGA:
    """Free product: disjoint generators, differentials carried over.
    Colliding names from b are suffixed with a prime."""
    used = set(a.generators)
    mapping: dict[str, str] = {}
    for g in b.generators:
        mapping[g] = _fresh(g, used)
        used.add(mapping[g])
    gens = a.generators + tuple(mapping[g] for g in b.generators)
    diff = dict(a.diff)
    for g in b.generators:
        diff[mapping[g]] = b.diff[g].rename(mapping)
    if (a.degrees is None) != (b.degrees is None):
        raise ValueError("cannot mix graded and ungraded algebras")
    if a.degrees is not None:
        if a.modulus != b.modulus:
            raise ValueError("grading moduli differ")
        degrees = dict(a.degrees)
        for g in b.generators:
            degrees[mapping[g]] = b.degrees[g]
        return FreeDGA(gens, diff, a.modulus, degrees)
    return FreeDGA(gens, diff)


def stabilize(a: FreeDGA, v: int | None = None) -> FreeDGA:
    """Coproduct with the two-generator algebra E: d(e1) = e2, d(e2) = 0.
    For a graded algebra supply v; e1 gets degree v and e2 degree v - 1."""
    graded = a.degrees is not None
    if graded == (v is None):
        raise ValueError("supply a degree exactly when the algebra is graded")
    used = set(a.generators)
    e1 = _fresh("e1", used)
    used.add(e1)
    e2 = _fresh("e2", used)
    gens = a.generators + (e1, e2)
    diff = dict(a.diff)
    diff[e1] = Poly.gen(e2)
    diff[e2] = Poly.zero()
    if graded:
        m = a.modulus
        degrees = dict(a.degrees)
        degrees[e1] = v % m if m else v
        degrees[e2] = (v - 1) % m if m else v - 1
        return FreeDGA(gens, diff, m, degrees)
    return FreeDGA(gens, diff)


def reference_algebra(kind: str) -> FreeDGA:
    """The two basepoint algebras: B1 = T(a) with d(a) = 1, and B2 = T(a, b)
    with d(a) = 1, d(b) = 0."""
    if kind == "B1":
        return FreeDGA(("a",), {"a": Poly.one()})
    if kind == "B2":
        return FreeDGA(("a", "b"), {"a": Poly.one(), "b": Poly.zero()})
    raise ValueError(f"unknown reference algebra {kind!r}")


def algebra_E() -> FreeDGA:
    return FreeDGA(("e1", "e2"), {"e1": Poly.gen("e2"), "e2": Poly.zero()})


# ---------------------------------------------------------------------------
# Tame maps


@dataclass(frozen=True)
class TameMap:
    """Composite of elementary substitutions and renamings, applied left to
    right: steps ('elem', j, u) send j to j + u, steps ('rename', mapping)
    relabel generators bijectively."""

    steps: tuple[tuple, ...]

    def apply(self, x: Poly) -> Poly:
        for step in self.steps:
            if step[0] == "elem":
                _, j, u = step
                x = x.substitute(j, Poly.gen(j) + u)
            else:
                x = x.rename(step[1])
        return x

    def inverse(self) -> "TameMap":
        inv_steps = []
        for step in reversed(self.steps):
            if step[0] == "elem":
                inv_steps.append(step)  # characteristic 2: self-inverse
            else:
                inv_steps.append(("rename", {v: k for k, v in step[1].items()}))
        return TameMap(tuple(inv_steps))

    def then(self, other: "TameMap") -> "TameMap":
        return TameMap(self.steps + other.steps)


def elementary_auto(algebra: FreeDGA, j: str, u: Poly) -> TameMap:
    """The elementary automorphism sending j to j + u."""
    if j not in algebra.generators:
        raise UnknownGenerator(j)
    unknown = u.generators_used() - set(algebra.generators)
    if unknown:
        raise UnknownGenerator(f"u mentions {sorted(unknown)}")
    if u.mentions(j):
        raise SelfReference(f"substitution for {j} mentions {j}")
    return TameMap((("elem", j, u),))


def renaming(algebra: FreeDGA, mapping: Mapping[str, str]) -> TameMap:
    if set(mapping) != set(algebra.generators):
        raise UnknownGenerator("renaming must cover exactly the generators")
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("renaming must be injective")
    return TameMap((("rename", dict(mapping)),))


def conjugate(algebra: FreeDGA, g: TameMap) -> FreeDGA:
    """The differential algebra with differential g d g^{-1}.

    Renaming steps in g move the algebra onto the renamed generators; pure
    automorphisms keep the generator set.
    """
    ginv = g.inverse()
    name_map: dict[str, str] = {}
    for old in algebra.generators:
        cur = old
        for step in g.steps:
            if step[0] == "rename":
                cur = step[1].get(cur, cur)
        name_map[old] = cur
    gens = tuple(name_map[x] for x in algebra.generators)
    diff: dict[str, Poly] = {}
    for new in gens:
        pre = ginv.apply(Poly.gen(new))  # back in the source generators
        diff[new] = g.apply(algebra.d(pre))
    if algebra.degrees is not None:
        degrees = {name_map[k]: v for k, v in algebra.degrees.items()}
        return FreeDGA(gens, diff, algebra.modulus, degrees)
    return FreeDGA(gens, diff)


def is_dga_isomorphism(src: FreeDGA, dst: FreeDGA, g: TameMap) -> bool:
    """Whether g carries d_src to d_dst: g(d_src(a)) == d_dst(g(a)) for every
    generator a of src (g must map src generators into dst's algebra)."""
    for name in src.generators:
        lhs = g.apply(src.d(Poly.gen(name)))
        rhs = dst.d(g.apply(Poly.gen(name)))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Text format


def format_dga(a: FreeDGA) -> str:
    lines = [f"generators: {' '.join(a.generators)}"]
    if a.degrees is not None:
        lines.append(f"modulus: {a.modulus}")
        degs = " ".join(f"{g}={a.degrees[g]}" for g in a.generators)
        lines.append(f"deg: {degs}")
    for g in a.generators:
        lines.append(f"d {g} = {a.diff[g].format(a.generators)}")
    return "\n".join(lines) + "\n"


def parse_dga(text: str) -> FreeDGA:
    gens: tuple[str, ...] | None = None
    modulus: int | None = None
    degrees: dict[str, int] | None = None
    diff: dict[str, Poly] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("generators:"):
            gens = tuple(line.split(":", 1)[1].split())
        elif line.startswith("modulus:"):
            modulus = int(line.split(":", 1)[1].strip())
        elif line.startswith("deg:"):
            degrees = {}
            for item in line.split(":", 1)[1].split():
                name, val = item.split("=")
                degrees[name] = int(val)
        elif line.startswith("d "):
            head, rhs = line[2:].split("=", 1)
            name = head.strip()
            diff[name] = _parse_poly(rhs.strip())
        else:
            raise DiagramFormatError(f"unrecognized .dga line: {raw!r}")
    if gens is None:
        raise DiagramFormatError("missing generators header")
    for g in gens:
        diff.setdefault(g, Poly.zero())
    if modulus is None and degrees is not None:
        raise DiagramFormatError("deg line without modulus")
    if modulus is not None and degrees is None:
        raise DiagramFormatError("modulus line without deg")
    return FreeDGA(gens, diff, modulus, degrees)


def _parse_poly(text: str) -> Poly:
    if text == "0":
        return Poly.zero()
    terms = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise DiagramFormatError("empty term in polynomial")
        if chunk == "1":
            terms.append(())
        else:
            terms.append(tuple(g.strip() for g in chunk.split("*")))
    return Poly(terms)
