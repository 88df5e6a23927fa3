//! Checking a resolved file: definitions extend the signature, pragmas
//! switch equality flags, checkeq runs the equality module.

use crate::eq::EqFlags;
use crate::syntax::{Ctx, DefEntry, Expr, Judgment, Signature, Sort};

use super::{CheckReport, Checker, Outcome, TypeError, DEFAULT_BUDGET};

/// A declaration after name resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolvedDecl {
    Def { name: String, ty: Expr, body: Option<Expr> },
    CheckEq { name: String, ctx: Ctx, lhs: Expr, rhs: Expr, ty: Expr },
    Pragma { name: String },
}

impl ResolvedDecl {
    pub fn name(&self) -> &str {
        match self {
            ResolvedDecl::Def { name, .. } | ResolvedDecl::CheckEq { name, .. } => name,
            ResolvedDecl::Pragma { name } => name,
        }
    }
}

/// The outcome of checking one unit: the final signature, the flags that
/// ended up in force, and one report per declaration.
#[derive(Debug, Clone)]
pub struct CheckedUnit {
    pub sig: Signature,
    pub flags: EqFlags,
    pub reports: Vec<(String, CheckReport)>,
}

impl CheckedUnit {
    pub fn all_accepted(&self) -> bool {
        self.reports.iter().all(|(_, r)| r.outcome.is_accepted())
    }
}

fn max_slot_in(decls: &[ResolvedDecl]) -> u32 {
    let mut best = 0;
    let mut bump = |e: &Expr| {
        if let Some(m) = e.max_slot() {
            best = best.max(m + 1);
        }
    };
    for d in decls {
        match d {
            ResolvedDecl::Def { ty, body, .. } => {
                bump(ty);
                if let Some(b) = body {
                    bump(b);
                }
            }
            ResolvedDecl::CheckEq { ctx, lhs, rhs, ty, .. } => {
                for (_, t) in &ctx.lin {
                    bump(t);
                }
                bump(lhs);
                bump(rhs);
                bump(ty);
            }
            ResolvedDecl::Pragma { .. } => {}
        }
    }
    best
}

pub fn apply_pragma(flags: &mut EqFlags, name: &str) -> Result<(), TypeError> {
    match name {
        "nat_l" => flags.nat_l = true,
        "eta_sigma" => flags.eta_sigma = true,
        "eta_sub" => flags.eta_sub = true,
        "ua" => flags.ua_rules = true,
        other => {
            return Err(TypeError::Internal(format!("unknown pragma: {other}")));
        }
    }
    Ok(())
}

/// Check a whole unit in declaration order. Later declarations still run
/// when earlier ones fail, but a failed def is not added to the signature.
pub fn check_unit(decls: &[ResolvedDecl], initial_flags: EqFlags, budget: u64) -> CheckedUnit {
    let mut sig = Signature::new();
    let mut flags = initial_flags;
    let mut reports = Vec::new();
    let fresh_floor = max_slot_in(decls);
    for d in decls {
        match d {
            ResolvedDecl::Pragma { name } => {
                if let Err(e) = apply_pragma(&mut flags, name) {
                    let judgment = Judgment::ctx_ok(Ctx::default());
                    reports.push((
                        format!("pragma {name}"),
                        CheckReport {
                            judgment,
                            outcome: Outcome::Rejected { reason: e.to_string() },
                            trace: None,
                        },
                    ));
                }
            }
            ResolvedDecl::Def { name, ty, body } => {
                let mut checker =
                    Checker::new(&sig, flags, budget).with_fresh_floor(fresh_floor);
                let judgment = match body {
                    Some(b) => Judgment::cart_term(Ctx::default(), b.clone(), ty.clone()),
                    None => Judgment::cart_type_ok(Ctx::default(), ty.clone()),
                };
                let judgment = match def_judgment_kind(&mut checker, ty, body) {
                    Ok(j) => j,
                    Err(_) => judgment,
                };
                let report = checker.check_judgment(&judgment);
                let accepted = report.outcome.is_accepted();
                reports.push((name.clone(), report));
                if accepted {
                    sig.push(DefEntry { name: name.clone(), ty: ty.clone(), body: body.clone() });
                }
            }
            ResolvedDecl::CheckEq { name, ctx, lhs, rhs, ty } => {
                let mut checker =
                    Checker::new(&sig, flags, budget).with_fresh_floor(fresh_floor);
                let judgment = match eq_judgment_kind(&mut checker, ctx, ty) {
                    Ok(lin) if lin => {
                        Judgment::lin_eq(ctx.clone(), lhs.clone(), rhs.clone(), ty.clone())
                    }
                    _ => Judgment::cart_eq(ctx.clone(), lhs.clone(), rhs.clone(), ty.clone()),
                };
                let report = checker.check_judgment(&judgment);
                reports.push((name.clone(), report));
            }
        }
    }
    CheckedUnit { sig, flags, reports }
}

/// Postulates assert their type well-formed; definitions check their body.
fn def_judgment_kind(
    checker: &mut Checker,
    ty: &Expr,
    body: &Option<Expr>,
) -> Result<Judgment, TypeError> {
    let mut cart = Vec::new();
    let sort = checker.check_type(&mut cart, ty)?;
    if sort != Sort::CartType {
        return Err(TypeError::SortMismatch(
            "top level definitions must have cartesian types".into(),
        ));
    }
    Ok(match body {
        Some(b) => Judgment::cart_term(Ctx::default(), b.clone(), ty.clone()),
        None => Judgment::cart_type_ok(Ctx::default(), ty.clone()),
    })
}

/// An equation is linear when its type is a linear type in its context.
fn eq_judgment_kind(checker: &mut Checker, ctx: &Ctx, ty: &Expr) -> Result<bool, TypeError> {
    let mut cart = ctx.cart.clone();
    Ok(checker.check_type(&mut cart, ty)? == Sort::LinType)
}

pub fn default_budget() -> u64 {
    DEFAULT_BUDGET
}
