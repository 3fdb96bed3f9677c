"""Structural verdicts: ranks, irreducibility certificates, classification, identities."""

from .certify import (CertificationError, HypothesisError, IrreducibilityCertificate, ReplayError,
                      certify_irreducible, check_hypotheses, target_monomials)
from .classify import (CanonicalSpec, Distinguishability, IsomorphismVerdict, UNKNOWN, canonicalize,
                       distinguish_pure_omega, specs_isomorphic)
from .identities import (NMBetaModule, NMElement, NonLocalFinitenessWitness, RankDeficiencyError,
                         binomial_vanishing, bundled_module, nm_beta_action, nm_top_omega_coefficient,
                         non_local_finiteness_witness)
from .rank import RankReport, rank_invariant
