"""Concrete 2-adic fields and their valuation-theoretic predicates.

A ``LocalField`` wraps a ring tower from :mod:`q2quartic.padic.rings`:
the unramified subfield U of residue degree f, optionally extended by one
Eisenstein step.  Quadratic extensions built by :func:`ramified_quadratic`
are again ``LocalField`` instances (with a ``base_field`` back-pointer and
a norm map), so all predicates below work uniformly at both levels of a
tower.

The central primitive is :meth:`LocalField.square_reach`: for a unit u it
finds how closely u can be approximated by squares, by repairing the digit
of u/x^2 - 1 one level at a time.  Even levels below 2*v(2) are always
repairable (residue fields of characteristic two are perfect), an odd
level is a permanent obstruction, and level 2*v(2) is an Artin-Schreier
condition.  Squares, the unramified quadratic class, and Hecke's
discriminant-exponent formula all read off from the stopping level.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from ..errors import DivisionByNonUnit, InvalidParams, PrecisionExhausted
from ..params import FieldParams, MinusOneClass
from .rings import EisensteinStep, UnramifiedRing, leading_residue

TRIVIAL = "trivial"
UNRAMIFIED = "unramified"

_PREC_GUARD = 48


class LocalField:
    def __init__(self, ring, spec=None, base_field=None, norm_coeffs=None, label=None):
        self.ring = ring
        self.f = ring.f
        self.q = 1 << ring.f
        self.res = ring.res
        self.e_abs = ring.e_abs  # v_K(2)
        self.spec = spec
        self.base_field = base_field  # set for quadratic steps E/K
        self._norm_coeffs = norm_coeffs  # (B, C) with theta^2 + B theta + C = 0
        self.label = label or "K"
        self._sqreps = None
        self._digit_table = {}

    # -- basic raw-element helpers -------------------------------------

    def from_int(self, n: int):
        return self.ring.from_int(n)

    def pi(self):
        return self.ring.shift(self.ring.one, 1)

    def val(self, a):
        return self.ring.val(a)

    def digit_elt(self, t: int, i: int):
        """The raw element [t] * pi^i (Teichmueller digit at level i), cached."""
        key = (t, i)
        e = self._digit_table.get(key)
        if e is None:
            e = self.ring.shift(self.ring.teich(t), i)
            self._digit_table[key] = e
        return e

    def from_digits(self, digits):
        a = self.ring.zero
        for i, t in enumerate(digits):
            if t:
                a = self.ring.add(a, self.digit_elt(t, i))
        return a

    # -- squares, Hecke, square classes --------------------------------

    def square_reach(self, u):
        """For a unit u, return (reach, x).

        reach = 2*v(2)+1 means u = x^2 * (1 + O(pi^{2v(2)+1})), hence a
        square; reach = 2*v(2) marks the unramified quadratic class; an odd
        reach < 2*v(2) is the Hecke invariant kappa, with witness x.
        """
        ring = self.ring
        w = self.e_abs
        r0 = ring.residue(u)
        if r0 == 0:
            raise DivisionByNonUnit("square_reach needs a unit")
        x = ring.teich(self.res.sqrt(r0))
        top = 2 * w + 1
        if top + 2 > ring.cap:
            raise PrecisionExhausted("field precision below 2*v(2)+3")
        for _ in range(top + 2):
            r = ring.sub(ring.mul(u, ring.inv_unit(ring.mul(x, x))), ring.one)
            l = ring.val(r)
            if l is None or l >= top:
                return top, x
            if l == 2 * w:
                s = self._artin_schreier_fix(r, l)
                if s is None:
                    return 2 * w, x
                x = ring.mul(x, ring.add(ring.one, self.digit_elt(s, w)))
                continue
            if l % 2 == 1:
                return l, x
            s = self.res.sqrt(leading_residue(ring, r, l))
            x = ring.mul(x, ring.add(ring.one, self.digit_elt(s, l // 2)))
        raise PrecisionExhausted("square_reach failed to terminate within budget")

    def _artin_schreier_fix(self, r, l):
        # solve s^2 + gamma*s = rbar in the residue field, gamma = res(2/pi^v(2))
        ring = self.ring
        rbar = leading_residue(ring, r, l)
        gamma = ring.residue(ring.shift(ring.from_int(2), -self.e_abs))
        for s in self.res.elements():
            if self.res.add(self.res.mul(s, s), self.res.mul(gamma, s)) == rbar:
                return s
        return None

    def is_square(self, a) -> bool:
        v = self.val(a)
        if v is None:
            raise PrecisionExhausted("cannot certify element nonzero")
        if v % 2 != 0:
            return False
        u = self.ring.shift(a, -v)
        return self.square_reach(u)[0] == 2 * self.e_abs + 1

    def hecke_disc(self, alpha):
        """Discriminant exponent of F(sqrt(alpha))/F: int, UNRAMIFIED, or TRIVIAL."""
        v = self.val(alpha)
        if v is None:
            raise PrecisionExhausted("cannot certify element nonzero")
        w = self.e_abs
        if v % 2 != 0:
            return 2 * w + 1
        reach, _ = self.square_reach(self.ring.shift(alpha, -v))
        if reach == 2 * w + 1:
            return TRIVIAL
        if reach == 2 * w:
            return UNRAMIFIED
        return 2 * w + 1 - reach

    def square_class_reps(self):
        """A complete duplicate-free system of representatives of F^x / F^x2.

        Built from the unit filtration: one Teichmueller digit at every odd
        level below 2*v(2), the Artin-Schreier class at level 2*v(2), and
        the uniformiser.  Size 2^{[F:Q_2] + 2}.
        """
        if self._sqreps is not None:
            return self._sqreps
        ring = self.ring
        w = self.e_abs
        odd_levels = list(range(1, 2 * w, 2))
        cstar = self.res.artin_schreier_nonzero()
        units = []
        for eps in (0, 1):
            stack = [ring.one]
            if eps:
                stack = [ring.add(ring.one, self.digit_elt(cstar, 2 * w))]
            for i in odd_levels:
                new = []
                for u in stack:
                    for t in self.res.elements():
                        new.append(ring.mul(u, ring.add(ring.one, self.digit_elt(t, i))) if t else u)
                stack = new
            units.extend(stack)
        reps = list(units)
        pi = self.pi()
        reps.extend(ring.mul(pi, u) for u in units)
        assert len(reps) == 1 << (self.e_abs * self.f + 2)
        self._sqreps = reps
        return reps

    def hilbert_symbol(self, a, b) -> int:
        """+1 if b is a norm from F(sqrt(a)), else -1."""
        va, vb = self.val(a), self.val(b)
        if va is None or vb is None:
            raise PrecisionExhausted("hilbert symbol of uncertified zero")
        da = self.hecke_disc(a)
        if da == TRIVIAL:
            return 1
        if da == UNRAMIFIED:
            return 1 if vb % 2 == 0 else -1
        E = ramified_quadratic(self, a)
        for z in E.square_class_reps():
            n = E.norm(z)
            if self.is_square(self.ring.mul(n, b)):
                # b = n * square => b in the norm group
                return 1
        return -1

    # -- quadratic-step extras ------------------------------------------

    def norm(self, z):
        """Norm to the base field of z = (x, y) in the theta-basis."""
        if self._norm_coeffs is None:
            raise InvalidParams("norm only defined on a quadratic step")
        B, C = self._norm_coeffs
        K = self.base_field.ring
        x, y = z
        n = K.sub(K.mul(x, x), K.mul(B, K.mul(x, y)))
        return K.add(n, K.mul(C, K.mul(y, y)))

    def norm_pair(self, x, y, d):
        """Norm of x + y*sqrt(d) down to the base: x^2 - d y^2 in base arithmetic."""
        ring = self.base_field.ring if self.base_field is not None else self.ring
        return ring.sub(ring.mul(x, x), ring.mul(d, ring.mul(y, y)))

    # -- parameter derivation -------------------------------------------

    def derive_params(self) -> FieldParams:
        minus_one = self.ring.from_int(-1)
        if self.is_square(minus_one):
            cls, d = MinusOneClass.SQUARE, 0
        else:
            h = self.hecke_disc(minus_one)
            if h == UNRAMIFIED:
                cls, d = MinusOneClass.UNRAMIFIED, 0
            else:
                cls, d = MinusOneClass.RAMIFIED, h
        p = FieldParams(self.e_abs, self.f, self.q, d, cls)
        p.validate()
        return p

    def spec_hash(self) -> str:
        blob = json.dumps(self.spec, sort_keys=True) if self.spec else self.label
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __repr__(self):
        return f"LocalField({self.label}, e={self.e_abs}, f={self.f})"


def ramified_quadratic(K: LocalField, d) -> LocalField:
    """The quadratic extension E = K(sqrt(d)) for d in a ramified square class.

    E is presented as K[theta]/(theta^2 + B theta + C) for a uniformiser
    theta, so valuations in E stay exact.  The returned field knows its
    norm map and the image of sqrt(d) in the theta-basis.
    """
    ring = K.ring
    v = K.val(d)
    if v is None:
        raise PrecisionExhausted("cannot certify d nonzero")
    k, rem = divmod(v, 2)
    if rem:
        u = ring.shift(d, -(v - 1))  # pi * unit
        B, C = ring.zero, ring.neg(u)
        sqrt_d_x, sqrt_d_y = ring.zero, ring.shift(ring.one, k)
    else:
        u = ring.shift(d, -v)
        reach, x = K.square_reach(u)
        if reach == 2 * K.e_abs + 1:
            raise InvalidParams("d is a square; no quadratic extension")
        if reach == 2 * K.e_abs:
            raise InvalidParams("d generates the unramified quadratic extension")
        kappa = reach
        j = (kappa - 1) // 2
        r = ring.sub(ring.mul(u, ring.inv_unit(ring.mul(x, x))), ring.one)
        B = ring.shift(ring.from_int(2), -j)
        C = ring.neg(ring.shift(r, -2 * j))
        sqrt_d_x = ring.shift(x, k)
        sqrt_d_y = ring.shift(x, j + k)
    ext = EisensteinStep(ring, [C, B])
    E = LocalField(
        ext,
        spec=None,
        base_field=K,
        norm_coeffs=(B, C),
        label=f"{K.label}(sqrt)",
    )
    E.d = d
    E.sqrt_d = (sqrt_d_x, sqrt_d_y)
    return E


# -- field specification files ------------------------------------------


def _coeff_from_entry(ring: UnramifiedRing, entry):
    if isinstance(entry, int):
        return ring.from_int(entry)
    if isinstance(entry, list):
        a = ring.zero
        for i, t in enumerate(entry):
            if not isinstance(t, int) or not (0 <= t < (1 << ring.f)):
                raise InvalidParams(f"digit {t!r} out of range for f={ring.f}")
            if t:
                a = ring.add(a, ring.shift(ring.teich(t), i))
        return a
    raise InvalidParams(f"coefficient entry {entry!r} must be an int or a digit list")


def field_from_spec(spec: dict) -> LocalField:
    """Build a LocalField from a FieldSpec dict.

    Schema::

        {"f": int,                  # residue degree of the unramified part
         "e": int,                  # optional; only e = 1 without "eisenstein"
         "eisenstein": [c0, ..., ce],  # optional; degree-ascending, monic
         "precision": int}          # optional pi-adic digits, default 16e+16

    Each coefficient is an integer, or a little-endian list of 2-adic
    digits whose entries encode residue-field elements (0 <= digit < 2^f).
    The unramified field itself is ``{"f": f}`` or ``{"f": f, "e": 1}``.
    """
    if "f" not in spec:
        raise InvalidParams("field spec needs 'f'")
    f = spec["f"]
    if not isinstance(f, int) or f < 1:
        raise InvalidParams(f"bad f: {f!r}")
    eis = spec.get("eisenstein")
    if eis is None:
        if spec.get("e", 1) != 1:
            raise InvalidParams("e > 1 requires an 'eisenstein' entry")
        e = 1
    else:
        e = len(eis) - 1
        if e < 1:
            raise InvalidParams("eisenstein entry must list at least two coefficients")
        if "e" in spec and spec["e"] != e:
            raise InvalidParams(f"e={spec['e']} conflicts with eisenstein degree {e}")
    prec = spec.get("precision", 16 * e + 16)
    n2 = -((prec + 8 * e + _PREC_GUARD) // -e)
    ring = UnramifiedRing(f, n2)
    if eis is None:
        field = LocalField(ring, spec=spec, label=f"U(f={f})" if f > 1 else "Q2")
        field.precision = prec
        return field
    coeffs = [_coeff_from_entry(ring, c) for c in eis]
    if coeffs[-1] != ring.one:
        raise InvalidParams("eisenstein polynomial must be monic (last entry 1)")
    lower = coeffs[:-1]
    v0 = ring.val(lower[0])
    if v0 != 1:
        raise InvalidParams(f"constant term must have valuation 1, got {v0}")
    for c in lower[1:]:
        v = ring.val(c)
        if v is not None and v < 1:
            raise InvalidParams("all lower coefficients need positive valuation")
    step = EisensteinStep(ring, lower)
    field = LocalField(step, spec=spec, label=f"K(e={e},f={f})")
    field.precision = prec
    return field


def with_doubled_precision(field: LocalField) -> LocalField:
    """Rebuild a spec-backed field carrying twice the pi-adic precision."""
    if field.spec is None:
        raise PrecisionExhausted("cannot rebuild a derived field at higher precision")
    spec = dict(field.spec)
    spec["precision"] = 2 * getattr(field, "precision", 16 * field.e_abs + 16)
    return field_from_spec(spec)


def field_from_file(path) -> LocalField:
    with open(path) as fh:
        spec = json.load(fh)
    if not isinstance(spec, dict):
        raise InvalidParams("field spec file must contain a JSON object")
    return field_from_spec(spec)


def q2(precision: int | None = None) -> LocalField:
    spec = {"f": 1, "e": 1}
    if precision is not None:
        spec["precision"] = precision
    return field_from_spec(spec)


# -- public element wrapper -------------------------------------------


@dataclass(frozen=True)
class LocalElement:
    """A field element with an explicit absolute precision (in pi-digits).

    Precision propagation: add keeps the min; mul keeps
    min(prec_a + v(b), prec_b + v(a)); inverting a unit keeps the
    precision; shifting by pi^k moves it by k.
    """

    field: LocalField
    data: object
    prec: int

    def _lift(self, other):
        if isinstance(other, LocalElement):
            if other.field is not self.field:
                raise InvalidParams("elements from different fields")
            return other
        if isinstance(other, int):
            return LocalElement(self.field, self.field.from_int(other), self.field.ring.cap)
        return NotImplemented

    def valuation(self):
        v = self.field.val(self.data)
        if v is None or v > self.prec:
            raise PrecisionExhausted(f"valuation exceeds known precision {self.prec}")
        return v

    def _val_floor(self):
        # valuation if visible, else the precision (a lower bound)
        v = self.field.val(self.data)
        return self.prec if v is None or v > self.prec else v

    def __add__(self, other):
        o = self._lift(other)
        return LocalElement(
            self.field, self.field.ring.add(self.data, o.data), min(self.prec, o.prec)
        )

    __radd__ = __add__

    def __neg__(self):
        return LocalElement(self.field, self.field.ring.neg(self.data), self.prec)

    def __sub__(self, other):
        o = self._lift(other)
        return self + (-o)

    def __mul__(self, other):
        o = self._lift(other)
        prec = min(self.prec + o._val_floor(), o.prec + self._val_floor())
        prec = min(prec, self.field.ring.cap)
        return LocalElement(self.field, self.field.ring.mul(self.data, o.data), prec)

    __rmul__ = __mul__

    def inv(self):
        v = self.field.val(self.data)
        if v != 0:
            raise DivisionByNonUnit("inv is defined for units; use shift first")
        return LocalElement(self.field, self.field.ring.inv_unit(self.data), self.prec)

    def shift(self, k: int):
        if k < 0 and self._val_floor() < -k:
            raise DivisionByNonUnit(f"cannot shift down by {-k}")
        return LocalElement(self.field, self.field.ring.shift(self.data, k), self.prec + k)

    def residue(self):
        if self.prec < 1:
            raise PrecisionExhausted("no certified digits")
        return self.field.ring.residue(self.data)


def element(field: LocalField, n: int) -> LocalElement:
    return LocalElement(field, field.from_int(n), field.ring.cap)


def arith(op: str, a: LocalElement, b: LocalElement | None = None) -> LocalElement:
    """Dispatch {add, mul, neg, inv} on precision-tracked elements."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise InvalidParams(f"unknown arithmetic op {op!r}")
