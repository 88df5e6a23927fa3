//! Core vocabulary: expressions, contexts, judgments, sorts.

mod alpha;
mod ctx;
pub mod expr;
pub mod ops;
mod sort;

pub use alpha::{alpha_eq, linear_occurrences};
pub use ctx::{Ctx, DefEntry, Judgment, JudgmentKind, Signature};
pub use expr::{Expr, SlotId, Sort, UnivTag};
pub use ops::{shift, subst, subst_lin, OpError};
pub use sort::{sort_of, SortError};
