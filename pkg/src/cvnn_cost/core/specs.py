"""
Architecture Specifications
Shallow and deep CVNN shapes, validated on construction
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Union

from .errors import InvalidSpecError, NotApplicableError

SHALLOW_ONLY_MESSAGE = "only proposed for shallow architectures"


class ArchKind(Enum):
    """The six architectures, in canonical (sort) order"""
    CVFNN = "cvfnn"
    SCFNN = "scfnn"
    MLMVN = "mlmvn"
    CRBF = "crbf"
    FCRBF = "fcrbf"
    PTRBF = "ptrbf"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def shallow_only(self) -> bool:
        return self in (ArchKind.CRBF, ArchKind.FCRBF)

    @property
    def perceptron_family(self) -> bool:
        return self in (ArchKind.CVFNN, ArchKind.SCFNN, ArchKind.MLMVN)

    @property
    def order(self) -> int:
        return list(ArchKind).index(self)

    @classmethod
    def parse(cls, name: Union[str, "ArchKind"]) -> "ArchKind":
        if isinstance(name, ArchKind):
            return name
        key = str(name).strip().lower().replace("-", "").replace("_", "")
        for arch in cls:
            if arch.value == key:
                return arch
        raise InvalidSpecError(f"unknown architecture '{name}'")


_LABELS = {
    ArchKind.CVFNN: "CVFNN",
    ArchKind.SCFNN: "SCFNN",
    ArchKind.MLMVN: "MLMVN",
    ArchKind.CRBF: "C-RBF",
    ArchKind.FCRBF: "FC-RBF",
    ArchKind.PTRBF: "PT-RBF",
}


class Mode(Enum):
    TRAINING = "training"
    INFERENCE = "inference"

    @classmethod
    def parse(cls, name: Union[str, "Mode"]) -> "Mode":
        if isinstance(name, Mode):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise InvalidSpecError(f"unknown mode '{name}'") from None


class AsymptoticRegime(Enum):
    """Parameter couplings under which the asymptotic order is read"""
    SHALLOW_N_DOMINANT = "shallow-n-dominant"  # P=R << N
    SHALLOW_BALANCED = "shallow-balanced"      # P=R ~ N
    DEEP_N_DOMINANT = "deep-n-dominant"        # P=R=N >> L
    DEEP_BALANCED = "deep-balanced"            # P=R=N ~ L

    @property
    def deep(self) -> bool:
        return self in (AsymptoticRegime.DEEP_N_DOMINANT, AsymptoticRegime.DEEP_BALANCED)

    @classmethod
    def parse(cls, name: Union[str, "AsymptoticRegime"]) -> "AsymptoticRegime":
        if isinstance(name, AsymptoticRegime):
            return name
        key = str(name).strip().lower().replace("_", "-")
        for regime in cls:
            if regime.value == key:
                return regime
        raise InvalidSpecError(f"unknown regime '{name}'")


class ComplexityOrder(Enum):
    LINEAR = 1
    QUADRATIC = 2
    CUBIC = 3

    @property
    def big_o(self) -> str:
        return "O(N)" if self.value == 1 else f"O(N^{self.value})"


def _positive(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidSpecError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise InvalidSpecError(f"{name} must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class ShallowSpec:
    """One hidden layer: P inputs, N hidden neurons, R outputs"""
    arch: ArchKind
    P: int
    R: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "arch", ArchKind.parse(self.arch))
        for name in ("P", "R", "N"):
            _positive(name, getattr(self, name))

    @property
    def inputs(self) -> int:
        return self.P

    @property
    def outputs(self) -> int:
        return self.R

    @property
    def deep(self) -> bool:
        return False

    def to_dict(self) -> Dict:
        return {"architecture": self.arch.value, "inputs": self.P, "outputs": self.R, "neurons": self.N}

    def describe(self) -> str:
        return f"{self.arch.label}(P={self.P}, R={self.R}, N={self.N})"


@dataclass(frozen=True)
class DeepSpec:
    """Layered spec: P = I^0, neurons = I^1..I^L, PT-RBF bottlenecks = O^1..O^L.

    For the perceptron family the last entry of `neurons` is the output layer;
    for PT-RBF the last bottleneck is the output width.
    """
    arch: ArchKind
    P: int
    neurons: tuple
    bottlenecks: Optional[tuple] = None

    def __post_init__(self):
        arch = ArchKind.parse(self.arch)
        object.__setattr__(self, "arch", arch)
        if arch.shallow_only:
            raise NotApplicableError(f"{arch.label}: {SHALLOW_ONLY_MESSAGE}")
        _positive("P", self.P)
        neurons = tuple(self.neurons)
        object.__setattr__(self, "neurons", neurons)
        for i, n in enumerate(neurons, start=1):
            _positive(f"I^{i}", n)

        if arch is ArchKind.PTRBF:
            if not neurons:
                raise InvalidSpecError("PT-RBF needs at least one layer")
            if self.bottlenecks is None:
                raise InvalidSpecError("PT-RBF deep spec needs bottlenecks O^1..O^L")
            bottlenecks = tuple(self.bottlenecks)
            object.__setattr__(self, "bottlenecks", bottlenecks)
            if len(bottlenecks) != len(neurons):
                raise InvalidSpecError(
                    f"neurons and bottlenecks lengths differ ({len(neurons)} vs {len(bottlenecks)})")
            for i, o in enumerate(bottlenecks, start=1):
                _positive(f"O^{i}", o)
        else:
            if len(neurons) < 2:
                raise InvalidSpecError(f"{arch.label} deep spec needs L >= 2 (hidden layers plus output layer)")
            if self.bottlenecks:
                raise InvalidSpecError("bottlenecks only apply to PT-RBF")
            object.__setattr__(self, "bottlenecks", None)

    @property
    def L(self) -> int:
        return len(self.neurons)

    @property
    def inputs(self) -> int:
        return self.P

    @property
    def outputs(self) -> int:
        return self.bottlenecks[-1] if self.arch is ArchKind.PTRBF else self.neurons[-1]

    @property
    def R(self) -> int:
        return self.outputs

    @property
    def deep(self) -> bool:
        return True

    def layer_sizes(self) -> List[int]:
        """I^0..I^L (perceptron family)"""
        return [self.P, *self.neurons]

    def bottleneck_sizes(self) -> List[int]:
        """O^0..O^L with O^0 = P (PT-RBF)"""
        return [self.P, *(self.bottlenecks or ())]

    def to_dict(self) -> Dict:
        data = {
            "architecture": self.arch.value,
            "inputs": self.P,
            "outputs": self.outputs,
            "neurons": list(self.neurons),
        }
        if self.bottlenecks is not None:
            data["bottlenecks"] = list(self.bottlenecks)
        return data

    def describe(self) -> str:
        text = f"{self.arch.label}(P={self.P}, I={list(self.neurons)}"
        if self.bottlenecks is not None:
            text += f", O={list(self.bottlenecks)}"
        return text + ")"


Spec = Union[ShallowSpec, DeepSpec]


def spec_from_fields(architecture, inputs: int, outputs: int,
                     neurons: Union[int, Sequence[int]],
                     bottlenecks: Optional[Sequence[int]] = None) -> Spec:
    """Build a spec from the flat RunConfig / CLI fields.

    An integer `neurons` (or a one-element list without bottlenecks for the
    RBF family) gives a shallow spec. An integer `neurons` with bottlenecks is
    a one-layer PT-RBF stack. A list gives a deep spec whose last entry
    (perceptron family) or last bottleneck (PT-RBF) must equal `outputs`.
    """
    arch = ArchKind.parse(architecture)
    _positive("inputs", inputs)
    _positive("outputs", outputs)
    if isinstance(bottlenecks, int) and not isinstance(bottlenecks, bool):
        bottlenecks = [bottlenecks]

    if isinstance(neurons, int) and not isinstance(neurons, bool):
        if not bottlenecks:
            return ShallowSpec(arch, inputs, outputs, neurons)
        if arch is not ArchKind.PTRBF:
            raise InvalidSpecError("bottlenecks given with a single hidden-layer size")
        neurons = [neurons]

    neurons = list(neurons)
    if not neurons:
        raise InvalidSpecError("neurons list is empty")
    if arch.shallow_only:
        if len(neurons) == 1 and not bottlenecks:
            return ShallowSpec(arch, inputs, outputs, neurons[0])
        raise NotApplicableError(f"{arch.label}: {SHALLOW_ONLY_MESSAGE}")

    if arch is ArchKind.PTRBF:
        if not bottlenecks:
            if len(neurons) == 1:
                return ShallowSpec(arch, inputs, outputs, neurons[0])
            raise InvalidSpecError("PT-RBF deep spec needs --bottlenecks")
        spec = DeepSpec(arch, inputs, tuple(neurons), tuple(bottlenecks))
    else:
        spec = DeepSpec(arch, inputs, tuple(neurons), tuple(bottlenecks) if bottlenecks else None)

    if spec.outputs != outputs:
        raise InvalidSpecError(f"last layer width {spec.outputs} does not match outputs={outputs}")
    return spec
