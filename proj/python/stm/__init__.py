"""Exact Sato-Tate moment engine and rigidity toolkit.

The heavy lifting lives in the compiled extension ``stm._stm``; this package
adds catalog-path resolution for installed builds and re-exports the public
surface. Groups and representations are addressed either by catalog name
(``"su2-std"``, ``"cyclic(7)"``, ``"binary_icosahedral"``) or by a JSON spec
document string.
"""

import json as _json
import os as _os

# Installed wheels carry the catalog inside the package; point the engine at
# it unless the caller already chose a directory.
if "STM_CATALOG_DIR" not in _os.environ:
    _bundled = _os.path.join(_os.path.dirname(__file__), "data", "catalog")
    if _os.path.isdir(_bundled):
        _os.environ["STM_CATALOG_DIR"] = _bundled

from ._stm import (  # noqa: E402
    StmError,
    catalog_list,
    catalog_show,
    catalog_subgroup_pairs,
    check_irreducible,
    crude_bound_threshold,
    dim,
    estimate_moments,
    finite_limit_experiment,
    gaussian_limit_report,
    infer_dimension,
    moment,
    moment_table,
    separation_index,
    verify_torsion_agreement,
)

__all__ = [
    "StmError",
    "catalog_list",
    "catalog_show",
    "catalog_subgroup_pairs",
    "check_irreducible",
    "crude_bound_threshold",
    "dim",
    "estimate_moments",
    "finite_limit_experiment",
    "gaussian_limit_report",
    "infer_dimension",
    "moment",
    "moment_table",
    "separation_index",
    "spec",
    "verify_torsion_agreement",
]


def spec(group, rep, name=""):
    """Builds a JSON spec document from group/rep dictionaries.

    >>> doc = spec({"special_unitary": {"n": 2}}, "std", name="su2")
    >>> moment(doc, 2, 2)
    2
    """
    return _json.dumps({"name": name, "group": group, "rep": rep})
