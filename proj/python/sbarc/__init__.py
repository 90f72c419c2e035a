"""Signed barcode invariants of multi-parameter persistence modules.

The heavy lifting lives in the compiled extension ``sbarc._core``; this
package re-exports its public names.
"""

from sbarc._core import (  # noqa: F401
    INF,
    Bar,
    BarShape,
    MatchingResult,
    ParseError,
    Presentation,
    SignedBarcode,
    __version__,
    barcode_from_json,
    barcode_to_json,
    barcode_to_svg,
    bottleneck,
    hook_distance,
    hook_to_zero,
    mrd_hooks,
    mrd_rect_of_hook,
    mrd_rectangles,
    parse_presentation,
    rank_exact_decomposition,
    rank_invariant,
    rect_distance,
    rect_to_zero,
    run_experiment,
    signed_bottleneck,
    upset_betti,
    usual_betti,
)
