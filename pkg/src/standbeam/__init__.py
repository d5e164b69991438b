"""Transverse vibration of a standing cantilever under self-weight with an
eccentric end rigid body, solved by power series and determinant root search."""

__version__ = "0.1.0"

from .beam_model import (AnnularSection, DimensionlessParams, DirectSection, EndBody, PhysicalConfig,
                         nondimensionalize, reference_config, section_properties)
from .eigen import (CharacteristicContext, EigenResult, ModeShape, ScanSettings, SignConvention,
                    characteristic_value, find_eigenvalues, is_buckled, mode_shape)
from .exceptions import (InsufficientRangeError, InvalidGeometryError, NotAnEigenvalueError,
                         OracleAssemblyError, SeriesRangeError, TruncationError)
from .frobenius import BoundaryState, SeriesBasis, TruncationPolicy, build_basis, evaluate_boundary
