//! Exact Laurent polynomials, Hilbert series and their closed forms.

pub mod compact;
pub mod hilbert;
pub mod laurent;
pub mod weyl;

pub use compact::{compact_fl13, compact_lgr36, CompactVariant};
pub use hilbert::{numerator_symmetry_check, HilbertSeries, Symmetry};
pub use laurent::{q_int, LaurentPoly, Q};
pub use weyl::{ambient_weight, hilbert_series_weyl, WeylSum};
