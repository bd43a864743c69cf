"""Function-correcting codes for the Lee metric: metrics, target functions, distance matrices,
irregular-distance code search, explicit constructions, decoding, and redundancy bounds."""
from .channel import (LeeChannelModel, decode_function, enumerate_errors, exhaustive_decode_check,
                      sample_channel, simulate)
from .constructions import (Codebook, Record, Verification, construct, construct_lee_weight_fclc,
                            construct_local_fclc, construct_modsum_fclc, construct_wdist_fclc,
                            redundancy_of, verify_fclc)
from .errors import (CapExceededError, ColoringError, DomainError, FCLCError, ShapeError,
                     UnsupportedParametersError)
from .functions import (TargetFunction, color_function, evaluate, expressiveness, function_ball, image,
                        is_valid_coloring, local_bound, parse_function_spec)
from .irregular import (IrregularCode, gv_upper_bound, plotkin_lower_bound, search_min_length,
                        verify_d_code)
from .lee import (ZqVector, hamming_distance, lee_distance, lee_sphere_volume, lee_weight,
                  multiset_pairwise_distance_sum, symbol_distance_sum)
from .matrices import (DistanceMatrix, distance_requirement_matrix, function_distance,
                       function_distance_matrix, representatives_match)
from .report import (BoundReport, bound_lee_weight, bound_modsum, bound_wdist_binary, comparison_report,
                     sphere_packing_data_redundancy, sphere_packing_function_redundancy)

__version__ = "0.1.0"
