__version__ = '2026.10.19'

from .certificate import Certificate
from .certificate_method import CertificateMethod
from .certificate_status import CertificateStatus
from .dual_solution import DualSolution
from .dual_status import DualStatus
from .form_family import FormFamily
from .job_spec import JobSpec
from .lure_system import InputSubstitution, LureSystem
from .nonlinearity import Nonlinearity
from .nonlinearity_kind import NonlinearityKind
from .norm_spec import NormSpec
from .pairing_value import PairingValue
from .primal_estimate import PrimalEstimate
from .settings import Settings
from .trajectory import Trajectory

__all__ = (
    'Certificate',
    'CertificateMethod',
    'CertificateStatus',
    'DualSolution',
    'DualStatus',
    'FormFamily',
    'InputSubstitution',
    'JobSpec',
    'LureSystem',
    'Nonlinearity',
    'NonlinearityKind',
    'NormSpec',
    'PairingValue',
    'PrimalEstimate',
    'Settings',
    'Trajectory',
)
