//! The bounds, the Vandermonde certificate and verification with
//! precision escalation.

mod bounds;
mod certificate;
mod lemmas;
mod report;
mod verify;

pub use bounds::{
    bound_classical, bound_main, bound_remark_degree, bound_remark_pairs, bound_sep_product, edge_product, sep_split,
    BoundReport, ClusterHint, Components, HintPair, Instance, SepSplit, Variant, Verdict,
};
pub use certificate::{
    det_interval, hadamard_bound, reduce_vandermonde, row_bound, row_norm_bound, vandermonde_matrix, Matrix,
    VandermondeCertificate, IDENTITY_TOL,
};
pub use lemmas::{
    compositions, lemma_aux_check, multiplicity_exponent, multiplicity_product_bound, AuxCheck, MultiplicityCheck,
};
pub use report::{certificate_json, interval_json, report_json, roots_json};
pub use verify::{verify, GraphInput, VerifyOptions, Verified};
