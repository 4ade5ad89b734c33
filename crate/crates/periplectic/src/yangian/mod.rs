//! The extended Yangian `X(p_N)` and the Yangian `Y(p_N)` as words in the
//! generators `T_ij^(r)`: the RTT relations expanded into coefficients, the
//! series `Z(u)`, and the Hopf-structure maps.
//!
//! No normal form exists at this level. Identities that need the relations
//! are checked through [`crate::pbw`] or on representations.

mod element;
mod hopf;
mod series;

pub use element::{reversal_sign, show_word, word_parity, AlgebraElement, GenTriple, Word};
pub use hopf::{counit, delta, delta_generator, m_map, t_map, twist, Antipode, TensorElement};
pub use series::{
    all_defects, check_unit_leading, even_square, inverse_t_matrix, lift, rtt_defect, rtt_rhs, s_matrix, t_series,
    z_series, GenSeries, SeriesMatrix, ZForm,
};
