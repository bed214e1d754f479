"""Exact localization formulas for Reeb cone functionals of contact toric manifolds."""
from .catalog import CATALOG, merged_sphere_dataset
from .cone import (GoodCone, SlicePolytope, VertexWeights, default_slicing_field,
                   reeb_cone_contains, slice_polytope, validate_good_cone, vertex_weights)
from .errors import (AmbiguousMinimizer, DegenerateEdge, DirectionNotGeneric, GridTooCoarse,
                     InvalidCone, MixedTruncation, NonConvergence, NonPrimitiveNormalWarning,
                     NotGood, NotInReebCone, NotSimple, NotStronglyConvex, NotTransversal,
                     PoleAtZero, ReebConeError, VanishingWeight, ZeroVolume)
from .fixed_locus import (ChernTable, FixedComponent, LocalizationDataset, TruncatedClass,
                          class_multiply, dataset_from_cone, dataset_from_json, integrate,
                          inverse_euler)
from .localize import (FunctionalValue, GradientValue, boundary_leading_term,
                       directional_derivative, einstein_hilbert, evaluate, evaluate_limit,
                       gradient, h1, hessian, total_scalar, volume)
from .optimize import (MinimizerReport, SliceProblem, build_slice, critical_rays_2d,
                       minimize, probe_boundary)
from .oracle import facet_measures, oracle_scalar, oracle_volume, truncated_cone_volume

__version__ = "0.1.0"
