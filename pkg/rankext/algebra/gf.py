"""
Exact arithmetic in GF(p^k) for small prime powers.

Elements are encoded as integers 0..q-1 whose base-p digits are the
polynomial coefficients in ascending order. The encoding coincides with the
integer representation used by galois, which realises every field here.
"""

import enum
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple, Union

import galois

from rankext.core.errors import (
    DivisionByZero,
    FieldTooLarge,
    InputError,
    InvalidModulus,
    NotPrime,
    ReducibleModulus,
    UnsupportedField,
)

logger = logging.getLogger(__name__)

MAX_ORDER = 2**16

# Irreducible monic moduli, coefficients ascending (constant term first).
BUILTIN_MODULI: Dict[int, Tuple[int, ...]] = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    9: (2, 1, 1),  # x^2 + x + 2
    25: (2, 1, 1),  # x^2 + x + 2
    27: (1, 2, 0, 1),  # x^3 + 2x + 1
}


class FieldOp(str, enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    NEG = "neg"
    INV = "inv"
    POW = "pow"


@dataclass(frozen=True)
class FieldSpec:
    """
    Description of GF(q), q = p^k.

    ``modulus`` is empty for prime fields and otherwise holds the k+1
    ascending coefficients of the monic irreducible defining polynomial.
    """

    p: int
    k: int = 1
    modulus: Tuple[int, ...] = ()

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    @property
    def gf(self) -> type:
        """The galois field class realising this field."""
        return _galois_field(self.p, self.k, self.modulus)

    def element(self, value: int):
        return self.gf(check_element(self, value))

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


@lru_cache(maxsize=None)
def _galois_field(p: int, k: int, modulus: Tuple[int, ...]) -> type:
    if k == 1:
        return galois.GF(p)
    poly = galois.Poly(list(modulus), field=galois.GF(p), order="asc")
    logger.debug(f"Building GF({p}^{k}) with modulus {poly}")
    return galois.GF(p**k, irreducible_poly=poly)


def is_irreducible_modulus(p: int, coeffs: Sequence[int]) -> bool:
    """
    Trial division of a monic polynomial over GF(p).

    Args:
        p: Prime characteristic
        coeffs: Ascending coefficients of a monic polynomial of degree >= 1

    Returns:
        True if no monic polynomial of degree 1..deg/2 divides it
    """
    prime_field = galois.GF(p)
    target = galois.Poly(list(coeffs), field=prime_field, order="asc")
    zero = galois.Poly.Zero(field=prime_field)
    degree = len(coeffs) - 1
    for d in range(1, degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = galois.Poly(list(tail) + [1], field=prime_field, order="asc")
            if target % divisor == zero:
                return False
    return True


def make_field(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """
    Build and validate a field description.

    Args:
        p: Prime characteristic
        k: Extension degree (>= 1)
        modulus: Ascending coefficients of a monic irreducible polynomial of
            degree k; ignored for k = 1, looked up in BUILTIN_MODULI if omitted

    Returns:
        A validated FieldSpec

    Example:
        make_field(2, 2, [1, 1, 1])  ->  GF(2^2) with modulus x^2 + x + 1
    """
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise NotPrime(f"Characteristic {p} is not prime", p=p)
    if not isinstance(k, int) or k < 1:
        raise InputError(f"Extension degree must be >= 1, got {k}", k=k)
    if p**k > MAX_ORDER:
        raise FieldTooLarge(f"GF({p}^{k}) exceeds the desk-scale cap q <= {MAX_ORDER}", q=p**k)

    if k == 1:
        return FieldSpec(p=p, k=1, modulus=())

    if modulus is None:
        if p**k not in BUILTIN_MODULI:
            raise UnsupportedField(
                f"No built-in modulus for q = {p**k}; supply one explicitly", q=p**k
            )
        coeffs = BUILTIN_MODULI[p**k]
    else:
        coeffs = tuple(int(c) for c in modulus)

    if len(coeffs) != k + 1:
        raise InvalidModulus(
            f"Modulus needs {k + 1} coefficients for degree {k}, got {len(coeffs)}",
            modulus=list(coeffs),
        )
    if any(c < 0 or c >= p for c in coeffs):
        raise InvalidModulus(f"Modulus coefficients must lie in 0..{p - 1}", modulus=list(coeffs))
    if coeffs[-1] != 1:
        raise ReducibleModulus("Modulus must be monic", modulus=list(coeffs))
    if not is_irreducible_modulus(p, coeffs):
        raise ReducibleModulus(f"Modulus {list(coeffs)} is reducible over GF({p})", modulus=list(coeffs))

    return FieldSpec(p=p, k=k, modulus=coeffs)


def check_element(F: FieldSpec, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        try:
            value = int(value)
        except (TypeError, ValueError):
            raise InputError(f"Field element must be an integer, got {value!r}")
    if value < 0 or value >= F.q:
        raise InputError(f"Element {value} outside 0..{F.q - 1} for {F}", value=value)
    return value


def field_arith(
    F: FieldSpec,
    op: Union[FieldOp, str],
    a: int,
    b: Optional[int] = None,
) -> int:
    """
    Exact arithmetic on encoded elements.

    For ``pow`` the second operand is an integer exponent (negative exponents
    invert first); every other binary operation takes a field element.
    """
    op = FieldOp(op)
    gf = F.gf
    x = gf(check_element(F, a))

    if op == FieldOp.NEG:
        return int(-x)
    if op == FieldOp.INV:
        if int(x) == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return int(x**-1)
    if b is None:
        raise InputError(f"Operation {op.value} needs a second operand")
    if op == FieldOp.POW:
        exponent = int(b)
        if exponent < 0 and int(x) == 0:
            raise DivisionByZero("Negative power of 0")
        return int(x**exponent)

    y = gf(check_element(F, b))
    if op == FieldOp.ADD:
        return int(x + y)
    if op == FieldOp.SUB:
        return int(x - y)
    if op == FieldOp.MUL:
        return int(x * y)
    # DIV
    if int(y) == 0:
        raise DivisionByZero("Division by 0")
    return int(x / y)


def enumerate_elements(F: FieldSpec) -> Tuple[int, ...]:
    """All elements 0..q-1 in increasing encoded order."""
    return tuple(range(F.q))


def field_from_order(q: int) -> FieldSpec:
    """Factor q = p^k and build the field with the built-in modulus."""
    if q < 2:
        raise NotPrime(f"Field order {q} is not a prime power", q=q)
    for p in range(2, q + 1):
        if q % p == 0:
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                raise NotPrime(f"Field order {q} is not a prime power", q=q)
            return make_field(p, k)
    raise NotPrime(f"Field order {q} is not a prime power", q=q)
