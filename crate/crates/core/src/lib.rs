//! Exact numerical invariants of relative complete intersections
//! `X ⊂ P(E)` over a curve, f-positivity and slope margins, cone membership
//! in `N^c(P(E))`, and the matching theorem-level verdicts.
//!
//! Every computation is exact (`num-bigint` / `num-rational`). Independent
//! brute-force routes live in [`oracles`] and are used to validate the
//! closed forms in [`invariants`].

pub mod bundle;
pub mod contact;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod oracles;
pub mod verdicts;

pub use bundle::{BundleOverCurve, CycleClass, HnBlock, Region};
pub use error::{Error, Result};
pub use exact::{Int, Rat, Sign, UniPoly};
pub use invariants::{PositivityReport, PushforwardSummary, RelativeCI};
pub use verdicts::VerdictReport;
