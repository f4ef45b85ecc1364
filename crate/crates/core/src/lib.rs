//! Quotient-difference schemes in binary64, compensated and double-double
//! arithmetic, together with an exact-rational oracle, a-posteriori error
//! analysis and the continued-fraction, pole and zero applications.

pub mod analysis;
pub mod apps;
pub mod arith;
pub mod bigreal;
pub mod dd;
pub mod eft;
pub mod error;
pub mod io;
pub mod oracle;
pub mod progressive;
pub mod qdtable;
pub mod series;

pub use dd::DD;
pub use eft::TwoTerm;
pub use error::{Error, Result};
pub use qdtable::{CompQdTable, Init, QdTable};
pub use series::{PolyInput, SeriesInput};
