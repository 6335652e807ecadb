import dataclasses
import typing

# (J[11], J[22], J[12]) ordering of the modal integrals
MODAL_PAIRS = ((0, 0), (1, 1), (0, 1))

_Triple = typing.Tuple[float, float, float]


@dataclasses.dataclass(frozen=True)
class BathKernels:
    """
    Thermally weighted influence integrals at horizon t.

    `j1`, `j2` hold the per-bath modal integrals (J[11], J[22], J[12]);
    C₁, C₂ and E₁ are fixed linear combinations of them. All values are in
    action units with ℏ = 1.
    """
    t: float
    c1: float
    c2: float
    e1: float
    c1Err: float = 0.0
    c2Err: float = 0.0
    e1Err: float = 0.0
    j1: _Triple = (0.0, 0.0, 0.0)
    j2: _Triple = (0.0, 0.0, 0.0)
    j1Err: _Triple = (0.0, 0.0, 0.0)
    j2Err: _Triple = (0.0, 0.0, 0.0)

    FIELD_COUNT = 19

    def toValues(self) -> typing.List[float]:
        """Flat float list in cache payload order"""
        return [
            self.t, self.c1, self.c2, self.e1, self.c1Err, self.c2Err, self.e1Err,
            *self.j1, *self.j2, *self.j1Err, *self.j2Err,
        ]

    @classmethod
    def fromValues(cls, values: typing.Sequence[float]) -> 'BathKernels':
        if len(values) != cls.FIELD_COUNT:
            raise ValueError(f'expected {cls.FIELD_COUNT} values, got {len(values)}')
        values = [float(v) for v in values]
        return cls(
            t=values[0], c1=values[1], c2=values[2], e1=values[3],
            c1Err=values[4], c2Err=values[5], e1Err=values[6],
            j1=tuple(values[7:10]), j2=tuple(values[10:13]),
            j1Err=tuple(values[13:16]), j2Err=tuple(values[16:19]),
        )

    @classmethod
    def zero(cls, t: float) -> 'BathKernels':
        return cls(t=t, c1=0.0, c2=0.0, e1=0.0)
