"""Free graded-commutative algebras over Q with a differential, and maps between them.

An element is a sparse map from exponent vectors to coefficients. Exponent
vectors are read as the ordered product g0^a0 * g1^a1 * ..., so odd generators
carry exponent 0 or 1 and signs only appear when multiplying.

An algebra may also carry relations among its even generators. That is how the
formal targets (cyclotomic fields, Laurent rings, the zero ring) are presented:
the quotient is (Q[even]/I) tensor Lambda[odd], and every comparison is made
after reducing modulo I.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ..errors import InputError
from ..exact.ideal import IdealNF
from ..exact.poly import MultiPoly, format_terms, grlex_key

Exps = tuple[int, ...]


@dataclass(frozen=True)
class Signature:
    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise InputError(f"duplicate generator names in {self.names}")

    @cached_property
    def index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def odd(self) -> tuple[bool, ...]:
        return tuple(d % 2 != 0 for d in self.degrees)

    def degree_of(self, exps: Exps) -> int:
        return sum(k * d for k, d in zip(exps, self.degrees))


def _mono_mul(sig: Signature, e1: Exps, e2: Exps):
    """Product of two ordered monomials: (exps, sign) or None when it vanishes."""
    odd = sig.odd
    sign = 1
    seen_later = 0  # odd generators of e1 strictly after the current position
    for i in range(len(e1) - 1, -1, -1):
        if odd[i]:
            if e1[i] and e2[i]:
                return None
            if e2[i] and seen_later % 2:
                sign = -sign
            if e1[i]:
                seen_later += 1
    return tuple(a + b for a, b in zip(e1, e2)), sign


class Element:
    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms=None):
        self.sig = sig
        self.terms: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(e)] = self.terms.get(tuple(e), 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def _raw(cls, sig, terms):
        el = cls.__new__(cls)
        el.sig = sig
        el.terms = terms
        return el

    @classmethod
    def scalar(cls, sig: Signature, c) -> "Element":
        return cls(sig, {(0,) * len(sig.names): c})

    @classmethod
    def generator(cls, sig: Signature, name: str) -> "Element":
        e = [0] * len(sig.names)
        e[sig.index[name]] = 1
        return cls._raw(sig, {tuple(e): Fraction(1)})

    @classmethod
    def from_poly(cls, sig: Signature, poly: MultiPoly) -> "Element":
        """Read a MultiPoly over (a subset of) the generator names as an ordered element."""
        full = poly.change_ring(sig.names)
        for e in full.terms:
            if any(k > 1 for k, o in zip(e, sig.odd) if o):
                return cls._raw(sig, {})
        return cls._raw(sig, dict(full.terms))

    def to_poly(self) -> MultiPoly:
        return MultiPoly._raw(self.sig.names, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.sig.degree_of(e) for e in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or degree in ds)

    def support(self) -> set[str]:
        return {n for e in self.terms for n, k in zip(self.sig.names, e) if k}

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.sig != self.sig:
                raise ValueError("elements of different algebras")
            return other
        return Element.scalar(self.sig, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Element._raw(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.sig, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Element):
            c = Fraction(other)
            return Element._raw(self.sig, {e: v * c for e, v in self.terms.items()} if c else {})
        other = self._coerce(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                r = _mono_mul(self.sig, e1, e2)
                if r is None:
                    continue
                e, s = r
                v = out.get(e, 0) + s * c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Element._raw(self.sig, out)

    def __rmul__(self, other):
        return self * other  # scalars are central

    def __pow__(self, k: int):
        out = Element.scalar(self.sig, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.sig == other.sig and self.terms == other.terms
        return self == self._coerce(other)

    def __hash__(self):
        return hash((self.sig.names, frozenset(self.terms.items())))

    def substitute(self, images: dict[str, "Element"], target_sig: Signature) -> "Element":
        """Image under the algebra map sending each generator to ``images[name]``."""
        zero = Element._raw(target_sig, {})
        out = zero
        powers: dict[tuple[int, int], Element] = {}
        for e, c in self.terms.items():
            term = Element.scalar(target_sig, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                key = (i, k)
                if key not in powers:
                    powers[key] = images[self.sig.names[i]] ** k
                term = term * powers[key]
                if term.is_zero():
                    break
            out = out + term
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def to_json(self) -> dict:
        return self.to_poly().to_json()

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        return format_terms(self.sorted_terms(), self.sig.names)


def _as_pairs(generators) -> tuple[tuple[str, int], ...]:
    out = []
    for g in generators:
        if isinstance(g, dict):
            out.append((str(g["name"]), int(g["degree"])))
        else:
            name, deg = g
            out.append((str(name), int(deg)))
    return tuple(out)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def extend(self, prefix: str, other: "ValidationReport"):
        self.violations.extend(f"{prefix}{v}" for v in other.violations)


class PresentedCdga:
    """Free graded-commutative Q-algebra on named generators with a differential.

    ``differential`` maps generator names to Elements or MultiPolys over the
    generator names (missing names have zero differential). ``relations`` are
    MultiPolys in the even generators only.
    """

    def __init__(self, generators=(), differential=None, relations=(), action: str = "trivial"):
        if action != "trivial":
            raise InputError(f"only the trivial Weyl action is supported, got {action!r}")
        self.action = action
        self.generators = _as_pairs(generators)
        self.sig = Signature(tuple(n for n, _ in self.generators), tuple(d for _, d in self.generators))
        self.differential: dict[str, Element] = {}
        self.unknown_differential_keys: list[str] = []
        for name, val in (differential or {}).items():
            if name not in self.sig.index:
                self.unknown_differential_keys.append(name)
                continue
            el = val if isinstance(val, Element) else Element.from_poly(self.sig, val)
            if el.sig != self.sig:
                raise InputError(f"differential of {name} lives in another algebra")
            if not el.is_zero():
                self.differential[name] = el
        even = self.even_names
        self.relations: tuple[MultiPoly, ...] = tuple(
            (r.to_poly() if isinstance(r, Element) else r).change_ring(even) for r in relations
        )

    # -- generators ------------------------------------------------------
    @property
    def names(self) -> tuple[str, ...]:
        return self.sig.names

    @property
    def even_names(self) -> tuple[str, ...]:
        return tuple(n for n, d in self.generators if d % 2 == 0)

    @property
    def odd_names(self) -> tuple[str, ...]:
        return tuple(n for n, d in self.generators if d % 2)

    def degree(self, name: str) -> int:
        return self.sig.degrees[self.sig.index[name]]

    def gen(self, name: str) -> Element:
        return Element.generator(self.sig, name)

    def const(self, c) -> Element:
        return Element.scalar(self.sig, c)

    def zero(self) -> Element:
        return Element(self.sig)

    def one(self) -> Element:
        return self.const(1)

    def element(self, poly: MultiPoly) -> Element:
        return Element.from_poly(self.sig, poly)

    def element_from_exps(self, exps, coeff=1) -> Element:
        return Element(self.sig, {tuple(exps): coeff})

    def d_gen(self, name: str) -> Element:
        return self.differential.get(name, self.zero())

    # -- structure -------------------------------------------------------
    @cached_property
    def ideal(self) -> IdealNF | None:
        if not self.relations:
            return None
        return IdealNF(self.relations, variables=self.even_names)

    @property
    def is_zero_ring(self) -> bool:
        return self.ideal is not None and self.ideal.is_unit

    def normal_form(self, el: Element) -> Element:
        if self.ideal is None:
            return el
        even_pos = [i for i, n in enumerate(self.names) if self.degree(n) % 2 == 0]
        odd_pos = [i for i in range(len(self.names)) if i not in even_pos]
        groups: dict[tuple, dict] = {}
        for e, c in el.terms.items():
            key = tuple(e[i] for i in odd_pos)
            groups.setdefault(key, {})[tuple(e[i] for i in even_pos)] = c
        out: dict[Exps, Fraction] = {}
        for key, terms in groups.items():
            red = self.ideal.normal_form(MultiPoly(self.even_names, terms))
            for ee, c in red.terms.items():
                full = [0] * len(self.names)
                for i, k in zip(even_pos, ee):
                    full[i] = k
                for i, k in zip(odd_pos, key):
                    full[i] = k
                out[tuple(full)] = c
        return Element._raw(self.sig, out)

    def d(self, el: Element) -> Element:
        """Differential extended by the graded Leibniz rule."""
        out = self.zero()
        sig = self.sig
        for e, c in el.terms.items():
            for i, k in enumerate(e):
                if not k or sig.names[i] not in self.differential:
                    continue
                prefix = [0] * len(e)
                prefix[:i] = e[:i]
                suffix = [0] * len(e)
                suffix[i + 1 :] = e[i + 1 :]
                pre = Element._raw(sig, {tuple(prefix): Fraction(1)})
                suf = Element._raw(sig, {tuple(suffix): Fraction(1)})
                dg = self.differential[sig.names[i]]
                if sig.odd[i]:
                    dfac = dg
                else:
                    low = [0] * len(e)
                    low[i] = k - 1
                    dfac = Element._raw(sig, {tuple(low): Fraction(k)}) * dg
                sign = -1 if sig.degree_of(tuple(prefix)) % 2 else 1
                out = out + (pre * dfac * suf) * (sign * c)
        return out

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        for k in self.unknown_differential_keys:
            rep.violations.append(f"differential given for unknown generator {k!r}")
        for name, deg in self.generators:
            dg = self.d_gen(name)
            if not dg.is_homogeneous(deg - 1):
                rep.violations.append(
                    f"d({name}) has degrees {sorted(dg.degrees())}, expected {deg - 1}"
                )
            dd = self.normal_form(self.d(dg))
            if not dd.is_zero():
                rep.violations.append(f"d(d({name})) = {dd} != 0")
        for r in self.relations:
            el = self.element(r)
            if not el.is_homogeneous():
                rep.violations.append(f"relation {r} is not homogeneous")
            dr = self.normal_form(self.d(el))
            if not dr.is_zero():
                rep.violations.append(f"d({r}) = {dr} is not in the relation ideal")
        return rep

    def restrict(self, names) -> "PresentedCdga":
        """Sub-presentation on ``names`` (differentials and relations must stay inside)."""
        names = [n for n in self.names if n in set(names)]
        gens = [(n, self.degree(n)) for n in names]
        diff = {n: self.d_gen(n).to_poly() for n in names}
        rels = [r for r in self.relations if r.support_variables() <= set(names)]
        return PresentedCdga(gens, diff, rels)

    # -- equality & serialization ---------------------------------------
    def _key(self):
        return (
            self.generators,
            tuple(sorted((n, frozenset(v.terms.items())) for n, v in self.differential.items())),
            tuple(sorted(str(r) for r in self.relations)),
        )

    def __eq__(self, other):
        return isinstance(other, PresentedCdga) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_json(self) -> dict:
        out = {
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "differential": {n: self.differential[n].to_json() for n in self.names if n in self.differential},
            "action": self.action,
        }
        if self.relations:
            out["relations"] = [r.to_json() for r in self.relations]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PresentedCdga":
        return cls(
            data.get("generators", []),
            {n: MultiPoly.from_json(p) for n, p in data.get("differential", {}).items()},
            [MultiPoly.from_json(r) for r in data.get("relations", [])],
            data.get("action", "trivial"),
        )

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in self.generators)
        return f"PresentedCdga([{gens}])"

    def describe(self) -> str:
        lines = [repr(self)]
        for n in self.names:
            if n in self.differential:
                lines.append(f"  d({n}) = {self.differential[n]}")
        for r in self.relations:
            lines.append(f"  {r} = 0")
        return "\n".join(lines)


def unit_cdga() -> PresentedCdga:
    return PresentedCdga()


def validate_cdga(A: PresentedCdga) -> ValidationReport:
    return A.validate()


def _rename(name: str, taken: set[str]) -> str:
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def tensor(A: PresentedCdga, B: PresentedCdga) -> PresentedCdga:
    """Tensor product; colliding names of B get a deterministic ``_k`` suffix."""
    taken = set(A.names)
    mapping = {}
    for n in B.names:
        new = n if n not in taken else _rename(n, taken | set(B.names))
        mapping[n] = new
        taken.add(new)
    gens = list(A.generators) + [(mapping[n], d) for n, d in B.generators]
    all_names = tuple(n for n, _ in gens)
    diff = {n: A.d_gen(n).to_poly().change_ring(all_names) for n in A.names}
    for n in B.names:
        p = B.d_gen(n).to_poly()
        p = MultiPoly._raw(tuple(mapping[v] for v in p.variables), p.terms)
        diff[mapping[n]] = p.change_ring(all_names)
    rels = list(A.relations)
    for r in B.relations:
        rels.append(MultiPoly._raw(tuple(mapping[v] for v in r.variables), r.terms))
    return PresentedCdga(gens, diff, rels)


class CdgaMap:
    """Algebra map determined by images of the source generators."""

    def __init__(self, source: PresentedCdga, target: PresentedCdga, assignment: dict):
        self.source = source
        self.target = target
        missing = [n for n in source.names if n not in assignment]
        if missing:
            raise InputError(f"no image given for generators {missing}")
        extra = [n for n in assignment if n not in source.sig.index]
        if extra:
            raise InputError(f"images given for unknown generators {extra}")
        self.assignment: dict[str, Element] = {}
        for n in source.names:
            v = assignment[n]
            if isinstance(v, MultiPoly):
                v = target.element(v)
            elif not isinstance(v, Element):
                v = target.const(v)
            if v.sig != target.sig:
                raise InputError(f"image of {n} is not in the target algebra")
            self.assignment[n] = target.normal_form(v)

    def __call__(self, el: Element) -> Element:
        return self.target.normal_form(el.substitute(self.assignment, self.target.sig))

    def compose(self, after: "CdgaMap") -> "CdgaMap":
        """``after`` o ``self``."""
        return CdgaMap(self.source, after.target, {n: after(v) for n, v in self.assignment.items()})

    def __eq__(self, other):
        return (
            isinstance(other, CdgaMap)
            and self.source == other.source
            and self.target == other.target
            and self.assignment == other.assignment
        )

    def to_json(self, source=None, target=None) -> dict:
        return {
            "source": source if source is not None else self.source.to_json(),
            "target": target if target is not None else self.target.to_json(),
            "assignment": {n: self.assignment[n].to_json() for n in self.source.names},
        }

    @classmethod
    def from_json(cls, data: dict, source=None, target=None) -> "CdgaMap":
        source = source or PresentedCdga.from_json(data["source"])
        target = target or PresentedCdga.from_json(data["target"])
        return cls(source, target, {n: MultiPoly.from_json(p) for n, p in data["assignment"].items()})

    def __repr__(self):
        body = ", ".join(f"{n} -> {v}" for n, v in self.assignment.items())
        return f"CdgaMap({body})"


def identity_map(A: PresentedCdga) -> CdgaMap:
    return CdgaMap(A, A, {n: A.gen(n) for n in A.names})


def inclusion_map(source: PresentedCdga, target: PresentedCdga, overrides=None) -> CdgaMap:
    """Send every generator to the same-named target generator unless overridden."""
    overrides = overrides or {}
    assignment = {}
    for n in source.names:
        if n in overrides:
            assignment[n] = overrides[n]
        else:
            assignment[n] = target.gen(n)
    return CdgaMap(source, target, assignment)


def is_cdga_map(f: CdgaMap) -> tuple[bool, list[str]]:
    """Degree preservation, the chain condition on generators, and relation preservation."""
    S, T = f.source, f.target
    problems = []
    for n, deg in S.generators:
        img = f.assignment[n]
        if not img.is_homogeneous(deg):
            problems.append(f"{n} (degree {deg}) maps to {img} of degrees {sorted(img.degrees())}")
            continue
        lhs = T.normal_form(T.d(img))
        rhs = f(S.d_gen(n))
        if lhs != rhs:
            problems.append(f"d(f({n})) = {lhs} but f(d({n})) = {rhs}")
    for r in S.relations:
        img = f(S.element(r))
        if not img.is_zero():
            problems.append(f"relation {r} maps to {img} != 0")
    return not problems, problems
