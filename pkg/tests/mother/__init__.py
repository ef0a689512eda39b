from .form_family_mother import FormFamilyMother
from .lure_system_mother import LureSystemMother
from .matrix_mother import MatrixMother
from .nonlinearity_mother import NonlinearityMother

__all__ = (
    'FormFamilyMother',
    'LureSystemMother',
    'MatrixMother',
    'NonlinearityMother',
)
