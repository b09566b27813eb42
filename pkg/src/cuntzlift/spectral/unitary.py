from typing import Any, Iterable, Sequence, Tuple

import attr

from ..circle import Angle


def _to_blocks(blocks: Iterable[Iterable[Any]]) -> Tuple[Tuple[Angle, ...], ...]:
    return tuple(tuple(Angle(a) for a in block) for block in blocks)


def _validate_blocks(instance, attribute: attr.Attribute, value):
    if not value:
        raise ValueError("a diagonal unitary needs at least one block")
    for i, block in enumerate(value):
        if not block:
            raise ValueError(f"block {i} is empty")


@attr.s(frozen=True, slots=True)
class DiagonalUnitary:
    """A diagonal unitary of M_{d_1} + ... + M_{d_r}, given by its eigenvalue angles.

    The angle list of each block is ordered; two unitaries with the same angle
    multisets are unitarily equivalent (see :meth:`same_spectrum`).

    Attributes:
        blocks (Tuple[Tuple[Angle, ...], ...]): The diagonal entries of each block.
    """

    blocks: Tuple[Tuple[Angle, ...], ...] = attr.ib(
        converter=_to_blocks, validator=[_validate_blocks]
    )

    @classmethod
    def from_angles(cls, angles: Iterable[Any]) -> "DiagonalUnitary":
        return cls([list(angles)])

    @classmethod
    def roots_of_unity(cls, n: int) -> "DiagonalUnitary":
        """w_n = diag(1, e^{2 i pi / 2^n}, ..., e^{2 i pi (2^n - 1) / 2^n})."""
        size = 1 << n
        return cls.from_angles(f"{j}/{size}" for j in range(size))

    @property
    def dimensions(self) -> Tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)

    @property
    def angles(self) -> Tuple[Angle, ...]:
        return tuple(a for block in self.blocks for a in block)

    def block(self, index: int) -> "DiagonalUnitary":
        return DiagonalUnitary([self.blocks[index]])

    def spectrum(self, index: int = 0) -> Tuple[Angle, ...]:
        """The sorted angle multiset of a block."""
        return tuple(sorted(self.blocks[index]))

    def same_spectrum(self, other: "DiagonalUnitary") -> bool:
        return self.dimensions == other.dimensions and all(
            self.spectrum(i) == other.spectrum(i) for i in range(len(self.blocks))
        )

    def direct_sum(self, other: "DiagonalUnitary") -> "DiagonalUnitary":
        return DiagonalUnitary(self.blocks + other.blocks)

    def amplify(self, factor: int) -> "DiagonalUnitary":
        """Repeat every entry `factor` times, the image under a unital embedding."""
        return DiagonalUnitary(
            [[a for a in block for _ in range(factor)] for block in self.blocks]
        )

    def __str__(self) -> str:
        return " + ".join(
            "diag(" + ", ".join(str(a) for a in block) + ")" for block in self.blocks
        )


def block_sum(blocks: Sequence[DiagonalUnitary]) -> DiagonalUnitary:
    return DiagonalUnitary([b for u in blocks for b in u.blocks])


__all__ = ["DiagonalUnitary", "block_sum"]
