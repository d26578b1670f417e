"""The six metered CVNN architectures"""

from .base import Network, TrainConfig
from .builder import NETWORK_CLASSES, build, infer, train_step
from .mvn import MLMVN, MVNeuron, mvn_correct
from .perceptron import CVFNN, SCFNN
from .ptrbf import PTRBF
from .rbf import CRBF, FCRBF

__all__ = [
    "Network",
    "TrainConfig",
    "NETWORK_CLASSES",
    "build",
    "infer",
    "train_step",
    "CVFNN",
    "SCFNN",
    "MLMVN",
    "MVNeuron",
    "mvn_correct",
    "CRBF",
    "FCRBF",
    "PTRBF",
]
