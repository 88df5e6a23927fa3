//! Split contexts, judgments and the global signature.

use super::expr::{Expr, SlotId};

/// A split context: a cartesian telescope and an ordered linear zone.
///
/// Each cartesian type is scoped over the prefix before it. Linear types are
/// scoped over the whole cartesian part and never mention linear variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ctx {
    pub cart: Vec<Expr>,
    pub lin: Vec<(SlotId, Expr)>,
}

impl Ctx {
    pub fn cart_only(cart: Vec<Expr>) -> Ctx {
        Ctx { cart, lin: Vec::new() }
    }

    pub fn new(cart: Vec<Expr>, lin: Vec<(SlotId, Expr)>) -> Ctx {
        Ctx { cart, lin }
    }

    /// Type of cartesian variable `i`, shifted into the full context.
    pub fn cart_type(&self, i: u32) -> Option<Expr> {
        let pos = self.cart.len().checked_sub(1 + i as usize)?;
        crate::syntax::ops::shift(&self.cart[pos], 0, i as i64 + 1).ok()
    }

    pub fn lin_slot_type(&self, slot: SlotId) -> Option<&Expr> {
        self.lin.iter().find(|(s, _)| *s == slot).map(|(_, t)| t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JudgmentKind {
    CtxOk,
    CartTypeOk,
    LinTypeOk,
    CartTermHasType,
    LinTermHasType,
    CartEq,
    LinEq,
}

/// One of the judgment forms, with its subjects in order.
///
/// `CartTermHasType`/`LinTermHasType` carry `[term, type]`; the equality
/// kinds carry `[lhs, rhs, type]`; the `*Ok` kinds carry `[subject]` or
/// nothing for `CtxOk`. Only `LinTermHasType`, `LinEq` and `CtxOk` may have
/// a nonempty linear zone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgment {
    pub kind: JudgmentKind,
    pub ctx: Ctx,
    pub subjects: Vec<Expr>,
}

impl Judgment {
    pub fn ctx_ok(ctx: Ctx) -> Judgment {
        Judgment { kind: JudgmentKind::CtxOk, ctx, subjects: vec![] }
    }

    pub fn cart_type_ok(ctx: Ctx, t: Expr) -> Judgment {
        Judgment { kind: JudgmentKind::CartTypeOk, ctx, subjects: vec![t] }
    }

    pub fn lin_type_ok(ctx: Ctx, t: Expr) -> Judgment {
        Judgment { kind: JudgmentKind::LinTypeOk, ctx, subjects: vec![t] }
    }

    pub fn cart_term(ctx: Ctx, e: Expr, ty: Expr) -> Judgment {
        Judgment { kind: JudgmentKind::CartTermHasType, ctx, subjects: vec![e, ty] }
    }

    pub fn lin_term(ctx: Ctx, e: Expr, ty: Expr) -> Judgment {
        Judgment { kind: JudgmentKind::LinTermHasType, ctx, subjects: vec![e, ty] }
    }

    pub fn cart_eq(ctx: Ctx, lhs: Expr, rhs: Expr, ty: Expr) -> Judgment {
        Judgment { kind: JudgmentKind::CartEq, ctx, subjects: vec![lhs, rhs, ty] }
    }

    pub fn lin_eq(ctx: Ctx, lhs: Expr, rhs: Expr, ty: Expr) -> Judgment {
        Judgment { kind: JudgmentKind::LinEq, ctx, subjects: vec![lhs, rhs, ty] }
    }

    /// The zone shape constraint on judgment kinds.
    pub fn zone_shape_ok(&self) -> bool {
        match self.kind {
            JudgmentKind::LinTermHasType | JudgmentKind::LinEq | JudgmentKind::CtxOk => true,
            _ => self.ctx.lin.is_empty(),
        }
    }
}

/// One top level definition: a name, a closed cartesian type, and an
/// optional transparent body. Bodyless entries are postulates; the semantic
/// backends give them meaning through a basis assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefEntry {
    pub name: String,
    pub ty: Expr,
    pub body: Option<Expr>,
}

/// The global signature a file builds up, referenced by `Expr::Const`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    entries: Vec<DefEntry>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, entry: DefEntry) -> u32 {
        self.entries.push(entry);
        (self.entries.len() - 1) as u32
    }

    pub fn get(&self, i: u32) -> Option<&DefEntry> {
        self.entries.get(i as usize)
    }

    pub fn lookup(&self, name: &str) -> Option<(u32, &DefEntry)> {
        self.entries
            .iter()
            .enumerate()
            .find(|(_, e)| e.name == name)
            .map(|(i, e)| (i as u32, e))
    }

    pub fn iter(&self) -> impl Iterator<Item = &DefEntry> {
        self.entries.iter()
    }
}
