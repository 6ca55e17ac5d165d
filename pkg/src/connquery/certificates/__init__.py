"""Exact certificate machinery for linear cut queries on small vertex sets."""

from .cuts import CutCertificate, chi, shores, universal_cut_incidence
from .learn import learn_simple_graph_one_query
from .linalg import exact_rank, row_basis
from .lp import LPProblem, LPResult, solve_lp
from .programs import alpha_lp, beta_lp, iota_lp
from .verify import con_cert_report, verify_at_least_tau, verify_con_cert, verify_mincut_cert
from .witness import CutRankWitness, cert_to_witness, cycle_rank_check, witness_to_cert

__all__ = [
    "CutCertificate", "CutRankWitness", "LPProblem", "LPResult", "alpha_lp", "beta_lp",
    "cert_to_witness", "chi", "con_cert_report", "cycle_rank_check", "exact_rank", "iota_lp",
    "learn_simple_graph_one_query", "row_basis", "shores", "solve_lp", "universal_cut_incidence",
    "verify_at_least_tau", "verify_con_cert", "verify_mincut_cert", "witness_to_cert",
]
