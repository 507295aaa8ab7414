//! Exact computations in the double affine Hecke algebra of type `GL_n`,
//! its polynomial representation, and the operators built from it.

pub mod basis;
pub mod error;
pub mod expr;
pub mod field;
pub mod gens;
pub mod group;
pub mod hecke;
pub mod integrable;
pub mod op;
pub mod pbw;
pub mod relations;
pub mod rules;
pub mod twotype;

pub use error::{CoreError, Result};
pub use field::{Ctx, Frac, Mode, Scalar, SiteSpec};
pub use gens::{CalDParams, Gen, Gens, JsGen, StringKind};
pub use group::{Key, Perm, MAX_SITES};
pub use op::Op;
pub use expr::{parse_expr, Atom, Expr};
pub use relations::{list_relations, verify, verify_suite, RelationEntry, VerificationReport};
pub use hecke::{hecke_normalize, HeckeElement};
pub use pbw::{pbw_validate, AlgElement, AlgWord, Hgl, Letter, PBWElement, PBWMonomial};
pub use basis::{centraliser_degree_check, pbw_monomials, pbw_rank_test, tau_one_check, CentraliserReport, RankOutcome};
pub use integrable::{cald_family, cald_sign, closed_d12, closed_m, e_closed, leading_term_check, res_compose, res_cald_sign_sum, res_sym, LeadingReport, SymKind};
pub use twotype::{twotype_build, twotype_hat_check, twotype_identity_check, twotype_merge_check, TwoTypeKind, TwoTypeOp};
