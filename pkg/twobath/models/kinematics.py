import dataclasses
import typing


@dataclasses.dataclass(frozen=True)
class DPiValues:
    """
    The D-combinations and Π-functions entering the β coefficients.

    Sums printed as D₉+D′₉ etc. are single fields (`d9Sum`, ...).
    """
    d3: float
    d3Prime: float
    d4: float
    d4Prime: float
    d9Sum: float
    d10Sum: float
    d11Sum: float
    d12Sum: float
    pi5: float
    pi6: float
    pi7: float
    pi8: float
    pi13: float
    pi14: float
    pi15: float
    pi16: float


@dataclasses.dataclass(frozen=True)
class KinematicSet:
    """
    Every deterministic time function at horizon t.

    `s`, `b` and `bPrime` are indexed like the printed tables: s[1]…s[14],
    b[1]…b[16]; index 0 is unused and zero.
    """
    t: float
    s: typing.Tuple[float, ...]
    b: typing.Tuple[float, ...]
    bPrime: typing.Tuple[float, ...]
    n1: float
    n2: float
    nBar1: float
    nBar2: float
    m1: float
    m2: float
    dpi: DPiValues

    @property
    def a11(self) -> float:
        """D₃ + Π₅, coefficient of ξ₁X_f1"""
        return self.dpi.d3 + self.dpi.pi5

    @property
    def a12(self) -> float:
        """D₁₀+D′₁₀ + Π₇, coefficient of ξ₁X_f2"""
        return self.dpi.d10Sum + self.dpi.pi7

    @property
    def a21(self) -> float:
        """D₉+D′₉ + Π₆, coefficient of ξ₂X_f1"""
        return self.dpi.d9Sum + self.dpi.pi6

    @property
    def a22(self) -> float:
        """D′₃ + Π₈, coefficient of ξ₂X_f2"""
        return self.dpi.d3Prime + self.dpi.pi8

    @property
    def b11(self) -> float:
        """D₄ + Π₁₃, coefficient of ξ₁X_i1"""
        return self.dpi.d4 + self.dpi.pi13

    @property
    def b12(self) -> float:
        return self.dpi.d12Sum + self.dpi.pi15

    @property
    def b21(self) -> float:
        return self.dpi.d11Sum + self.dpi.pi14

    @property
    def b22(self) -> float:
        return self.dpi.d4Prime + self.dpi.pi16


@dataclasses.dataclass(frozen=True)
class ModalCoefficients:
    """
    Boundary coefficients of the sum (k=1) and difference (k=2) modes:
    k3[k] = −MΩₖnₖ multiplies ξX_f, k4[k] = (M/2)(Ωₖ cot Ωₖt + γ) multiplies ξX_i.
    """
    t: float
    k3: typing.Tuple[float, float]
    k4: typing.Tuple[float, float]
