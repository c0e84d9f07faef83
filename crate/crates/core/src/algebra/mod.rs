//! Linear algebra of ℝ^{3,1}, its Hermitian matrix model, and the
//! spin-group identifications used by every other module.

pub mod mat2;
pub mod skew;
pub mod vec31;

pub use mat2::{
    herm_from_vec, sl2_act_vec, sl2alg_act_vec, vec_from_herm, vec_from_mat, Herm2, Mat2, Sl2,
    Sl2Alg, C64,
};
pub use skew::{skew_to_sl2, sl2_to_skew, wedge_to_skew, Skew31};
pub use vec31::{ip31, CausalType, Vec31};
