"""Exact computation of H^1(osp(1|2); D_{lambda,mu}) on the supercircle."""

from .cocycles import (
    upsilon_even,
    upsilon_odd,
    upsilon_tilde_odd,
    verify_theorem,
)
from .cohomology import Cochain1, H1Report, delta0, delta1, h1_dims, solve_coboundary
from .contact import ContactField, Density, check_table, contact_bracket, osp_basis
from .diffop import DOp, lie_op, op_apply, op_compose
from .superfield import Poly, SuperFun

__version__ = "0.1.0"

__all__ = [
    "Cochain1",
    "ContactField",
    "DOp",
    "Density",
    "H1Report",
    "Poly",
    "SuperFun",
    "check_table",
    "contact_bracket",
    "delta0",
    "delta1",
    "h1_dims",
    "lie_op",
    "op_apply",
    "op_compose",
    "osp_basis",
    "solve_coboundary",
    "upsilon_even",
    "upsilon_odd",
    "upsilon_tilde_odd",
    "verify_theorem",
]
