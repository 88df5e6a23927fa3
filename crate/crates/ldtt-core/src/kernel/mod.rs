//! The type checker: bidirectional, with leftover linear resource
//! accounting and a frozen zone inside every cartesian subterm.

use thiserror::Error;

use crate::eq::{self, EqError, EqFlags, RedexTrace};
use crate::syntax::expr::*;
use crate::syntax::{
    alpha_eq, ops, sort_of, Ctx, Expr, Judgment, JudgmentKind, Signature, SlotId, Sort,
    SortError, UnivTag,
};

mod decl;
mod zone;

pub use decl::{check_unit, CheckedUnit, ResolvedDecl};
pub use zone::{SlotStatus, Zone, ZoneEntry, ZoneError};

pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("{0}")]
    Sort(#[from] SortError),
    #[error("{0}")]
    Ops(#[from] ops::OpError),
    #[error("{0}")]
    Eq(#[from] EqError),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("cannot infer a type for {0}; a checking position is required")]
    NotInferable(String),
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("expected a {expected} type, found {found}")]
    ExpectedForm { expected: &'static str, found: String },
    #[error("linear slot {slot} used {uses} times")]
    LinearViolation { slot: SlotId, uses: u32 },
    #[error("additive branches disagree on linear usage at slot {0}")]
    ZoneMismatch(SlotId),
    #[error("zone annotation mismatch: {0}")]
    ZoneAnnotation(String),
    #[error("mode error: {0}")]
    ModeError(String),
    #[error("a bound variable escapes its scope in {0}")]
    EscapingVariable(String),
    #[error("the ua rule is disabled; enable the ua pragma")]
    UaDisabled,
    #[error("sort mismatch: {0}")]
    SortMismatch(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, TypeError>;

fn zone_err(e: ZoneError) -> TypeError {
    match e {
        ZoneError::NotLive { slot, was_consumed: true } => {
            TypeError::LinearViolation { slot, uses: 2 }
        }
        ZoneError::NotLive { slot, was_consumed: false } => {
            TypeError::LinearViolation { slot, uses: 0 }
        }
        ZoneError::BranchMismatch { slot } => TypeError::ZoneMismatch(slot),
        ZoneError::ShiftUnderflow => {
            TypeError::Internal("zone entry type escaped its scope".into())
        }
    }
}

fn describe(e: &Expr) -> String {
    crate::parse::pretty::pretty_expr(e)
}

/// Normalization traces of the two sides of an equality check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EqTraces {
    pub lhs: RedexTrace,
    pub rhs: RedexTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Accepted,
    Rejected { reason: String },
}

impl Outcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Outcome::Accepted)
    }
}

/// Result of checking one judgment or declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub judgment: Judgment,
    pub outcome: Outcome,
    pub trace: Option<EqTraces>,
}

pub struct Checker<'s> {
    pub sig: &'s Signature,
    pub flags: EqFlags,
    pub budget: u64,
    fresh: SlotId,
}

impl<'s> Checker<'s> {
    pub fn new(sig: &'s Signature, flags: EqFlags, budget: u64) -> Checker<'s> {
        Checker { sig, flags, budget, fresh: 1_000_000 }
    }

    pub fn with_fresh_floor(mut self, floor: SlotId) -> Checker<'s> {
        self.fresh = self.fresh.max(floor);
        self
    }

    fn fresh_slot(&mut self) -> SlotId {
        let s = self.fresh;
        self.fresh += 1;
        s
    }

    fn conv_types(&self, t1: &Expr, t2: &Expr) -> Result<()> {
        if eq::equal_types(self.sig, t1, t2, &self.flags, self.budget)? {
            Ok(())
        } else {
            Err(TypeError::TypeMismatch { expected: describe(t2), found: describe(t1) })
        }
    }

    fn conv_terms(&self, ty: &Expr, e1: &Expr, e2: &Expr) -> Result<()> {
        if eq::equal(self.sig, ty, e1, e2, &self.flags, self.budget)? {
            Ok(())
        } else {
            Err(TypeError::TypeMismatch { expected: describe(e2), found: describe(e1) })
        }
    }

    fn cart_var_type(&self, cart: &[Expr], i: u32) -> Result<Expr> {
        let pos = cart
            .len()
            .checked_sub(1 + i as usize)
            .ok_or_else(|| TypeError::OutOfScope(format!("cartesian index {i}")))?;
        Ok(ops::shift(&cart[pos], 0, i as i64 + 1)?)
    }

    /// If the binder slot collides with one already in the zone, rename it
    /// apart in the body.
    fn open_slot(&mut self, zone: &Zone, slot: SlotId, body: &Expr) -> Result<(SlotId, Expr)> {
        if zone.contains(slot) {
            let fresh = self.fresh_slot();
            Ok((fresh, ops::subst_lin(body, slot, &Expr::LinVar(fresh))?))
        } else {
            Ok((slot, body.clone()))
        }
    }

    // ------------------------------------------------------------------
    // type formation
    // ------------------------------------------------------------------

    /// Accepts exactly the formation rules; returns which kind of type.
    pub fn check_type(&mut self, cart: &mut Vec<Expr>, e: &Expr) -> Result<Sort> {
        use Expr::*;
        match e {
            UnivU | UnivL => Ok(Sort::CartType),
            UnitI | ZeroTy | TopTy => Ok(Sort::LinType),
            Pi(a, b) | Sigma(a, b) => {
                self.expect_type(cart, a, Sort::CartType)?;
                cart.push(a.as_ref().clone());
                let r = self.expect_type(cart, b, Sort::CartType);
                cart.pop();
                r?;
                Ok(Sort::CartType)
            }
            Sqcap(a, b) | Sqsubset(a, b) => {
                self.expect_type(cart, a, Sort::CartType)?;
                cart.push(a.as_ref().clone());
                let r = self.expect_type(cart, b, Sort::LinType);
                cart.pop();
                r?;
                Ok(Sort::LinType)
            }
            Id(a, m, n) => {
                self.expect_type(cart, a, Sort::CartType)?;
                self.check_cart(cart, m, a)?;
                self.check_cart(cart, n, a)?;
                Ok(Sort::CartType)
            }
            El(UnivTag::Cart, code) => {
                self.check_cart(cart, code, &UnivU)?;
                Ok(Sort::CartType)
            }
            El(UnivTag::Lin, code) => {
                self.check_cart(cart, code, &UnivL)?;
                Ok(Sort::LinType)
            }
            Tensor(a, b) | Lolli(a, b) | With(a, b) | Plus(a, b) => {
                self.expect_type(cart, a, Sort::LinType)?;
                self.expect_type(cart, b, Sort::LinType)?;
                Ok(Sort::LinType)
            }
            LTy(a) => {
                self.expect_type(cart, a, Sort::CartType)?;
                Ok(Sort::LinType)
            }
            MTy(b) => {
                self.expect_type(cart, b, Sort::LinType)?;
                Ok(Sort::CartType)
            }
            other => Err(TypeError::SortMismatch(format!(
                "not a type former: {}",
                describe(other)
            ))),
        }
    }

    fn expect_type(&mut self, cart: &mut Vec<Expr>, e: &Expr, want: Sort) -> Result<()> {
        let got = self.check_type(cart, e)?;
        if got == want {
            Ok(())
        } else {
            Err(TypeError::SortMismatch(format!(
                "expected a {want:?}, found a {got:?}: {}",
                describe(e)
            )))
        }
    }

    // ------------------------------------------------------------------
    // cartesian terms: the zone is structurally untouchable here
    // ------------------------------------------------------------------

    pub fn infer_cart(&mut self, cart: &mut Vec<Expr>, e: &Expr) -> Result<Expr> {
        use Expr::*;
        match e {
            CartVar(i) => self.cart_var_type(cart, *i),
            Const(i) => self
                .sig
                .get(*i)
                .map(|d| d.ty.clone())
                .ok_or_else(|| TypeError::OutOfScope(format!("signature constant {i}"))),
            LinVar(s) => Err(TypeError::ModeError(format!(
                "linear variable {s} inside a cartesian term"
            ))),
            Lam(a, b) => {
                self.expect_type(cart, a, Sort::CartType)?;
                cart.push(a.as_ref().clone());
                let bt = self.infer_cart(cart, b);
                cart.pop();
                Ok(pi(a.as_ref().clone(), bt?))
            }
            App(f, a) => {
                let ft = self.infer_cart(cart, f)?;
                let Pi(dom, cod) = ft else {
                    return Err(TypeError::ExpectedForm { expected: "Π", found: describe(&ft) });
                };
                self.check_cart(cart, a, &dom)?;
                Ok(ops::subst(&cod, a, 0)?)
            }
            PairC(_, _) => Err(TypeError::NotInferable(describe(e))),
            Pr1(p) => {
                let pt = self.infer_cart(cart, p)?;
                let Sigma(a, _) = pt else {
                    return Err(TypeError::ExpectedForm { expected: "Σ", found: describe(&pt) });
                };
                Ok(*a)
            }
            Pr2(p) => {
                let pt = self.infer_cart(cart, p)?;
                let Sigma(_, b) = pt else {
                    return Err(TypeError::ExpectedForm { expected: "Σ", found: describe(&pt) });
                };
                Ok(ops::subst(&b, &pr1(p.as_ref().clone()), 0)?)
            }
            SigElim1 { motive, branch, scrut } => {
                let st = self.infer_cart(cart, scrut)?;
                let Sigma(a, b) = st else {
                    return Err(TypeError::ExpectedForm { expected: "Σ", found: describe(&st) });
                };
                cart.push(sigma(a.as_ref().clone(), b.as_ref().clone()));
                let r = self.expect_type(cart, motive, Sort::CartType);
                cart.pop();
                r?;
                let expected = motive_at_pair(motive)?;
                cart.push(a.as_ref().clone());
                cart.push(b.as_ref().clone());
                let r = self.check_cart(cart, branch, &expected);
                cart.pop();
                cart.pop();
                r?;
                Ok(ops::subst(motive, scrut, 0)?)
            }
            Refl(m) => {
                let a = self.infer_cart(cart, m)?;
                Ok(id_ty(a, m.as_ref().clone(), m.as_ref().clone()))
            }
            IdElim1 { motive, branch, proof } => {
                let pt = self.infer_cart(cart, proof)?;
                let Id(a, m, n) = pt else {
                    return Err(TypeError::ExpectedForm { expected: "Id", found: describe(&pt) });
                };
                self.check_id_motive(cart, &a, motive, Sort::CartType)?;
                let expected = motive_on_diagonal(motive)?;
                cart.push(a.as_ref().clone());
                let r = self.check_cart(cart, branch, &expected);
                cart.pop();
                r?;
                Ok(motive_at_endpoints(motive, &m, &n, proof)?)
            }
            MIntro(b) => {
                let mut zone = Zone::empty();
                let bt = self.infer_lin(cart, &mut zone, b)?;
                zone.finalize().map_err(zone_err)?;
                Ok(m_ty(bt))
            }
            Ua { fwd, back, back2, coh1, coh2 } => {
                self.infer_ua(cart, fwd, back, back2, coh1, coh2)
            }
            other => Err(TypeError::SortMismatch(format!(
                "not a cartesian term: {}",
                describe(other)
            ))),
        }
    }

    pub fn check_cart(&mut self, cart: &mut Vec<Expr>, e: &Expr, ty: &Expr) -> Result<()> {
        use Expr::*;
        match (e, ty) {
            (PairC(a, b), Sigma(dom, cod)) => {
                self.check_cart(cart, a, dom)?;
                let bt = ops::subst(cod, a, 0)?;
                self.check_cart(cart, b, &bt)
            }
            (PairC(_, _), _) => Err(TypeError::ExpectedForm {
                expected: "Σ",
                found: describe(ty),
            }),
            (Lam(ann, body), Pi(dom, cod)) => {
                self.expect_type(cart, ann, Sort::CartType)?;
                self.conv_types(ann, dom)?;
                cart.push(ann.as_ref().clone());
                let r = self.check_cart(cart, body, cod);
                cart.pop();
                r
            }
            _ => {
                let found = self.infer_cart(cart, e)?;
                self.conv_types(&found, ty)
            }
        }
    }

    fn check_id_motive(
        &mut self,
        cart: &mut Vec<Expr>,
        a: &Expr,
        motive: &Expr,
        want: Sort,
    ) -> Result<()> {
        cart.push(a.clone());
        cart.push(ops::shift(a, 0, 1)?);
        cart.push(id_ty(ops::shift(a, 0, 2)?, var(1), var(0)));
        let r = self.expect_type(cart, motive, want);
        cart.truncate(cart.len() - 3);
        r
    }

    fn infer_ua(
        &mut self,
        cart: &mut Vec<Expr>,
        fwd: &Expr,
        back: &Expr,
        back2: &Expr,
        coh1: &Expr,
        coh2: &Expr,
    ) -> Result<Expr> {
        if !self.flags.ua_rules {
            return Err(TypeError::UaDisabled);
        }
        let mut zone = Zone::empty();
        let ft = self.infer_lin(cart, &mut zone, fwd)?;
        zone.finalize().map_err(zone_err)?;
        let Expr::Lolli(dom, cod) = &ft else {
            return Err(TypeError::ExpectedForm { expected: "⊸", found: describe(&ft) });
        };
        let (Expr::El(UnivTag::Lin, a), Expr::El(UnivTag::Lin, b)) = (dom.as_ref(), cod.as_ref())
        else {
            return Err(TypeError::ExpectedForm {
                expected: "El ⊸ El",
                found: describe(&ft),
            });
        };
        let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
        let back_ty = lolli(el_l(b.clone()), el_l(a.clone()));
        for g in [back, back2] {
            let mut zone = Zone::empty();
            self.check_lin(cart, &mut zone, g, &back_ty)?;
            zone.finalize().map_err(zone_err)?;
        }
        let compose = |outer: &Expr, inner: &Expr, at: &Expr, fresh: SlotId| {
            linlam(
                el_l(at.clone()),
                fresh,
                linapp(outer.clone(), linapp(inner.clone(), lvar(fresh))),
            )
        };
        let u1 = self.fresh_slot();
        let u2 = self.fresh_slot();
        let gf = compose(back, fwd, &a, u1);
        let ida = linlam(el_l(a.clone()), u2, lvar(u2));
        let p_ty = id_ty(
            m_ty(lolli(el_l(a.clone()), el_l(a.clone()))),
            mintro(gf),
            mintro(ida),
        );
        self.check_cart(cart, coh1, &p_ty)?;
        let u3 = self.fresh_slot();
        let u4 = self.fresh_slot();
        let fh = compose(fwd, back2, &b, u3);
        let idb = linlam(el_l(b.clone()), u4, lvar(u4));
        let q_ty = id_ty(
            m_ty(lolli(el_l(b.clone()), el_l(b.clone()))),
            mintro(fh),
            mintro(idb),
        );
        self.check_cart(cart, coh2, &q_ty)?;
        Ok(id_ty(Expr::UnivL, a, b))
    }

    // ------------------------------------------------------------------
    // linear terms: the zone threads through
    // ------------------------------------------------------------------

    fn enter_cart(&mut self, cart: &mut Vec<Expr>, zone: &mut Zone, ty: Expr) -> Result<()> {
        cart.push(ty);
        zone.shift_types(1).map_err(zone_err)
    }

    fn exit_cart(&mut self, cart: &mut Vec<Expr>, zone: &mut Zone) -> Result<()> {
        cart.pop();
        zone.shift_types(-1).map_err(zone_err)
    }

    pub fn infer_lin(&mut self, cart: &mut Vec<Expr>, zone: &mut Zone, e: &Expr) -> Result<Expr> {
        use Expr::*;
        match e {
            LinVar(s) => zone.consume(*s).map_err(zone_err),
            LinLam { ann, slot, body } => {
                self.expect_type(cart, ann, Sort::LinType)?;
                let (slot, body) = self.open_slot(zone, *slot, body)?;
                zone.push(slot, ann.as_ref().clone());
                let bt = self.infer_lin(cart, zone, &body);
                let popped = zone.pop(slot).map_err(zone_err);
                let bt = bt?;
                popped?;
                Ok(lolli(ann.as_ref().clone(), bt))
            }
            LinApp(f, a) => {
                let ft = self.infer_lin(cart, zone, f)?;
                let Lolli(dom, cod) = ft else {
                    return Err(TypeError::ExpectedForm { expected: "⊸", found: describe(&ft) });
                };
                self.check_lin(cart, zone, a, &dom)?;
                Ok(*cod)
            }
            SqLam(ann, body) => {
                self.expect_type(cart, ann, Sort::CartType)?;
                self.enter_cart(cart, zone, ann.as_ref().clone())?;
                let bt = self.infer_lin(cart, zone, body);
                self.exit_cart(cart, zone)?;
                Ok(sqcap(ann.as_ref().clone(), bt?))
            }
            SqApp(t, a) => {
                let tt = self.infer_lin(cart, zone, t)?;
                let Sqcap(dom, cod) = tt else {
                    return Err(TypeError::ExpectedForm { expected: "⊓", found: describe(&tt) });
                };
                self.check_cart(cart, a, &dom)?;
                Ok(ops::subst(&cod, a, 0)?)
            }
            SqPair(_, _) => Err(TypeError::NotInferable(describe(e))),
            SqLet { .. } => self.check_let_like(cart, zone, e, None),
            TenPair(s, t) => {
                let ts = self.infer_lin(cart, zone, s)?;
                let tt = self.infer_lin(cart, zone, t)?;
                Ok(tensor(ts, tt))
            }
            TenLet { .. } => self.check_let_like(cart, zone, e, None),
            UnitIntro => Ok(UnitI),
            UnitLet { .. } => self.check_let_like(cart, zone, e, None),
            WithPair(s, t) => {
                let snapshot = zone.clone();
                let ts = self.infer_lin(cart, zone, s)?;
                let mut other = snapshot;
                let tt = self.infer_lin(cart, &mut other, t)?;
                zone.merge_additive(&other).map_err(zone_err)?;
                Ok(with(ts, tt))
            }
            WithFst(t) => {
                let tt = self.infer_lin(cart, zone, t)?;
                let With(a, _) = tt else {
                    return Err(TypeError::ExpectedForm { expected: "&", found: describe(&tt) });
                };
                Ok(*a)
            }
            WithSnd(t) => {
                let tt = self.infer_lin(cart, zone, t)?;
                let With(_, b) = tt else {
                    return Err(TypeError::ExpectedForm { expected: "&", found: describe(&tt) });
                };
                Ok(*b)
            }
            Inl(_) | Inr(_) => Err(TypeError::NotInferable(describe(e))),
            PlusCase { .. } => self.check_let_like(cart, zone, e, None),
            ZeroElim(_) => Err(TypeError::NotInferable(describe(e))),
            TopIntro => {
                zone.slack = true;
                Ok(TopTy)
            }
            LIntro(a) => {
                let at = self.infer_cart(cart, a)?;
                Ok(l_ty(at))
            }
            LLet { .. } => self.check_let_like(cart, zone, e, None),
            MElim(t) => {
                let tt = self.infer_cart(cart, t)?;
                let MTy(b) = tt else {
                    return Err(TypeError::ExpectedForm { expected: "M", found: describe(&tt) });
                };
                Ok(*b)
            }
            SigElim2 { motive, zone_ann, branch, scrut } => {
                self.check_sig_elim2(cart, zone, motive, zone_ann, branch, scrut)
            }
            IdElim2 { motive, zone_ann, branch, proof } => {
                self.check_id_elim2(cart, zone, motive, zone_ann, branch, proof)
            }
            CartVar(_) | Const(_) | Lam(_, _) | App(_, _) | PairC(_, _) | Pr1(_) | Pr2(_)
            | SigElim1 { .. } | Refl(_) | IdElim1 { .. } | MIntro(_) | Ua { .. } => {
                Err(TypeError::ModeError(format!(
                    "cartesian term where a linear term is required: {}",
                    describe(e)
                )))
            }
            other => Err(TypeError::SortMismatch(format!(
                "not a linear term: {}",
                describe(other)
            ))),
        }
    }

    pub fn check_lin(
        &mut self,
        cart: &mut Vec<Expr>,
        zone: &mut Zone,
        e: &Expr,
        ty: &Expr,
    ) -> Result<()> {
        use Expr::*;
        match (e, ty) {
            (Inl(t), Plus(a, _)) => self.check_lin(cart, zone, t, a),
            (Inr(t), Plus(_, b)) => self.check_lin(cart, zone, t, b),
            (Inl(_), _) | (Inr(_), _) => {
                Err(TypeError::ExpectedForm { expected: "⊕", found: describe(ty) })
            }
            (SqPair(s, b), Sqsubset(dom, cod)) => {
                self.check_cart(cart, s, dom)?;
                let bt = ops::subst(cod, s, 0)?;
                self.check_lin(cart, zone, b, &bt)
            }
            (SqPair(_, _), _) => {
                Err(TypeError::ExpectedForm { expected: "⊏", found: describe(ty) })
            }
            (TenPair(s, t), Tensor(a, b)) => {
                self.check_lin(cart, zone, s, a)?;
                self.check_lin(cart, zone, t, b)
            }
            (WithPair(s, t), With(a, b)) => {
                let snapshot = zone.clone();
                self.check_lin(cart, zone, s, a)?;
                let mut other = snapshot;
                self.check_lin(cart, &mut other, t, b)?;
                zone.merge_additive(&other).map_err(zone_err)
            }
            (LinLam { ann, slot, body }, Lolli(dom, cod)) => {
                self.expect_type(cart, ann, Sort::LinType)?;
                self.conv_types(ann, dom)?;
                let (slot, body) = self.open_slot(zone, *slot, body)?;
                zone.push(slot, ann.as_ref().clone());
                let r = self.check_lin(cart, zone, &body, cod);
                let popped = zone.pop(slot).map_err(zone_err);
                r?;
                popped
            }
            (SqLam(ann, body), Sqcap(dom, cod)) => {
                self.expect_type(cart, ann, Sort::CartType)?;
                self.conv_types(ann, dom)?;
                self.enter_cart(cart, zone, ann.as_ref().clone())?;
                let r = self.check_lin(cart, zone, body, cod);
                self.exit_cart(cart, zone)?;
                r
            }
            (ZeroElim(t), _) => {
                let tt = self.infer_lin(cart, zone, t)?;
                self.conv_types(&tt, &ZeroTy)?;
                zone.slack = true;
                Ok(())
            }
            (SqLet { .. }, _) | (TenLet { .. }, _) | (UnitLet { .. }, _) | (LLet { .. }, _)
            | (PlusCase { .. }, _) => {
                self.check_let_like(cart, zone, e, Some(ty)).map(|_| ())
            }
            _ => {
                let found = self.infer_lin(cart, zone, e)?;
                self.conv_types(&found, ty)
            }
        }
    }

    /// The let-style eliminators share scrutinee-then-body structure; in
    /// check mode the expected type pushes into the body, in infer mode the
    /// body type must not mention the bound cartesian variable.
    fn check_let_like(
        &mut self,
        cart: &mut Vec<Expr>,
        zone: &mut Zone,
        e: &Expr,
        expected: Option<&Expr>,
    ) -> Result<Expr> {
        use Expr::*;
        match e {
            TenLet { scrut, slots, body } => {
                let st = self.infer_lin(cart, zone, scrut)?;
                let Tensor(a, b) = st else {
                    return Err(TypeError::ExpectedForm { expected: "⊗", found: describe(&st) });
                };
                let (x, body) = self.open_slot(zone, slots.0, body)?;
                zone.push(x, a.as_ref().clone());
                let (y, body) = self.open_slot(zone, slots.1, &body)?;
                zone.push(y, b.as_ref().clone());
                let out = match expected {
                    Some(ty) => self.check_lin(cart, zone, &body, ty).map(|_| ty.clone()),
                    None => self.infer_lin(cart, zone, &body),
                };
                let py = zone.pop(y).map_err(zone_err);
                let px = zone.pop(x).map_err(zone_err);
                let out = out?;
                py?;
                px?;
                Ok(out)
            }
            UnitLet { scrut, body } => {
                let st = self.infer_lin(cart, zone, scrut)?;
                self.conv_types(&st, &UnitI)?;
                match expected {
                    Some(ty) => self.check_lin(cart, zone, body, ty).map(|_| ty.clone()),
                    None => self.infer_lin(cart, zone, body),
                }
            }
            SqLet { scrut, slot, body } => {
                let st = self.infer_lin(cart, zone, scrut)?;
                let Sqsubset(a, b) = st else {
                    return Err(TypeError::ExpectedForm { expected: "⊏", found: describe(&st) });
                };
                self.enter_cart(cart, zone, a.as_ref().clone())?;
                let (y, body) = self.open_slot(zone, *slot, body)?;
                zone.push(y, b.as_ref().clone());
                let out = match expected {
                    Some(ty) => {
                        let lifted = ops::shift(ty, 0, 1)?;
                        self.check_lin(cart, zone, &body, &lifted).map(|_| ty.clone())
                    }
                    None => {
                        let t = self.infer_lin(cart, zone, &body)?;
                        ops::shift(&t, 0, -1).map_err(|_| {
                            TypeError::EscapingVariable(describe(&t))
                        })
                    }
                };
                let py = zone.pop(y).map_err(zone_err);
                let exited = self.exit_cart(cart, zone);
                let out = out?;
                py?;
                exited?;
                Ok(out)
            }
            LLet { scrut, body } => {
                let st = self.infer_lin(cart, zone, scrut)?;
                let LTy(a) = st else {
                    return Err(TypeError::ExpectedForm { expected: "L", found: describe(&st) });
                };
                self.enter_cart(cart, zone, a.as_ref().clone())?;
                let out = match expected {
                    Some(ty) => {
                        let lifted = ops::shift(ty, 0, 1)?;
                        self.check_lin(cart, zone, body, &lifted).map(|_| ty.clone())
                    }
                    None => {
                        let t = self.infer_lin(cart, zone, body)?;
                        ops::shift(&t, 0, -1).map_err(|_| {
                            TypeError::EscapingVariable(describe(&t))
                        })
                    }
                };
                let exited = self.exit_cart(cart, zone);
                let out = out?;
                exited?;
                Ok(out)
            }
            PlusCase { scrut, left_slot, left, right_slot, right } => {
                let st = self.infer_lin(cart, zone, scrut)?;
                let Plus(a, b) = st else {
                    return Err(TypeError::ExpectedForm { expected: "⊕", found: describe(&st) });
                };
                let snapshot = zone.clone();
                let (x, left) = self.open_slot(zone, *left_slot, left)?;
                zone.push(x, a.as_ref().clone());
                let lt = match expected {
                    Some(ty) => self.check_lin(cart, zone, &left, ty).map(|_| ty.clone()),
                    None => self.infer_lin(cart, zone, &left),
                };
                let px = zone.pop(x).map_err(zone_err);
                let lt = lt?;
                px?;
                let mut other = snapshot;
                let (y, right) = self.open_slot(&other, *right_slot, right)?;
                other.push(y, b.as_ref().clone());
                let rt = match expected {
                    Some(ty) => self.check_lin(cart, &mut other, &right, ty).map(|_| ty.clone()),
                    None => self.infer_lin(cart, &mut other, &right),
                };
                let py = other.pop(y).map_err(zone_err);
                let rt = rt?;
                py?;
                if expected.is_none() {
                    self.conv_types(&rt, &lt)?;
                }
                zone.merge_additive(&other).map_err(zone_err)?;
                Ok(lt)
            }
            _ => unreachable!("check_let_like on a non-let"),
        }
    }

    fn check_sig_elim2(
        &mut self,
        cart: &mut Vec<Expr>,
        zone: &mut Zone,
        motive: &Expr,
        zone_ann: &[(SlotId, Expr)],
        branch: &Expr,
        scrut: &Expr,
    ) -> Result<Expr> {
        let st = self.infer_cart(cart, scrut)?;
        let Expr::Sigma(a, b) = st else {
            return Err(TypeError::ExpectedForm { expected: "Σ", found: describe(&st) });
        };
        cart.push(sigma(a.as_ref().clone(), b.as_ref().clone()));
        let r = self.expect_type(cart, motive, Sort::LinType);
        cart.pop();
        r?;

        // validate the annotated premise zone against the live zone
        let mut originals = Vec::new();
        for (slot, ann_ty) in zone_ann {
            let cur = zone
                .live_type(*slot)
                .cloned()
                .ok_or_else(|| TypeError::ZoneAnnotation(format!("slot {slot} is not live")))?;
            cart.push(a.as_ref().clone());
            cart.push(b.as_ref().clone());
            let r = self.expect_type(cart, ann_ty, Sort::LinType);
            cart.truncate(cart.len() - 2);
            r?;
            // the annotation instantiated at the projections of the
            // scrutinee must be the slot's current type
            let p1 = pr1(scrut.clone());
            let p2 = pr2(scrut.clone());
            let inst = ops::subst(ann_ty, &ops::shift(&p2, 0, 1)?, 0)?;
            let inst = ops::subst(&inst, &p1, 0)?;
            self.conv_types(&cur, &inst).map_err(|e| {
                TypeError::ZoneAnnotation(format!("slot {slot}: {e}"))
            })?;
            originals.push((*slot, cur));
        }

        let expected = motive_at_pair(motive)?;
        self.enter_cart(cart, zone, a.as_ref().clone())?;
        self.enter_cart(cart, zone, b.as_ref().clone())?;
        for (slot, ann_ty) in zone_ann {
            zone.set_type(*slot, ann_ty.clone());
        }
        let r = self.check_lin(cart, zone, branch, &expected);
        for (slot, orig) in &originals {
            zone.set_type(*slot, ops::shift(orig, 0, 2)?);
        }
        self.exit_cart(cart, zone)?;
        self.exit_cart(cart, zone)?;
        r?;
        Ok(ops::subst(motive, scrut, 0)?)
    }

    fn check_id_elim2(
        &mut self,
        cart: &mut Vec<Expr>,
        zone: &mut Zone,
        motive: &Expr,
        zone_ann: &[(SlotId, Expr)],
        branch: &Expr,
        proof: &Expr,
    ) -> Result<Expr> {
        let pt = self.infer_cart(cart, proof)?;
        let Expr::Id(a, m, n) = pt else {
            return Err(TypeError::ExpectedForm { expected: "Id", found: describe(&pt) });
        };
        self.check_id_motive(cart, &a, motive, Sort::LinType)?;

        let mut originals = Vec::new();
        for (slot, ann_ty) in zone_ann {
            let cur = zone
                .live_type(*slot)
                .cloned()
                .ok_or_else(|| TypeError::ZoneAnnotation(format!("slot {slot} is not live")))?;
            cart.push(a.as_ref().clone());
            cart.push(ops::shift(&a, 0, 1)?);
            cart.push(id_ty(ops::shift(&a, 0, 2)?, var(1), var(0)));
            let r = self.expect_type(cart, ann_ty, Sort::LinType);
            cart.truncate(cart.len() - 3);
            r?;
            let inst = motive_at_endpoints(ann_ty, &m, &n, proof)?;
            self.conv_types(&cur, &inst).map_err(|e| {
                TypeError::ZoneAnnotation(format!("slot {slot}: {e}"))
            })?;
            originals.push((*slot, cur));
        }

        let expected = motive_on_diagonal(motive)?;
        self.enter_cart(cart, zone, a.as_ref().clone())?;
        for (slot, ann_ty) in zone_ann {
            zone.set_type(*slot, motive_on_diagonal(ann_ty)?);
        }
        let r = self.check_lin(cart, zone, branch, &expected);
        for (slot, orig) in &originals {
            zone.set_type(*slot, ops::shift(orig, 0, 1)?);
        }
        self.exit_cart(cart, zone)?;
        r?;
        Ok(motive_at_endpoints(motive, &m, &n, proof)?)
    }

    // ------------------------------------------------------------------
    // judgments
    // ------------------------------------------------------------------

    fn check_ctx(&mut self, ctx: &Ctx) -> Result<()> {
        let mut cart = Vec::new();
        for t in &ctx.cart {
            self.expect_type(&mut cart, t, Sort::CartType)?;
            cart.push(t.clone());
        }
        let mut seen = Vec::new();
        for (slot, t) in &ctx.lin {
            if seen.contains(slot) {
                return Err(TypeError::Internal(format!("duplicate linear slot {slot}")));
            }
            seen.push(*slot);
            self.expect_type(&mut cart, t, Sort::LinType)?;
        }
        Ok(())
    }

    /// Check one judgment, producing a report rather than an error.
    pub fn check_judgment(&mut self, j: &Judgment) -> CheckReport {
        let outcome = self.run_judgment(j);
        match outcome {
            Ok(trace) => CheckReport { judgment: j.clone(), outcome: Outcome::Accepted, trace },
            Err(e) => CheckReport {
                judgment: j.clone(),
                outcome: Outcome::Rejected { reason: e.to_string() },
                trace: None,
            },
        }
    }

    fn run_judgment(&mut self, j: &Judgment) -> Result<Option<EqTraces>> {
        if !j.zone_shape_ok() {
            return Err(TypeError::ModeError(
                "this judgment kind carries an empty linear zone".into(),
            ));
        }
        self.check_ctx(&j.ctx)?;
        // well-sortedness gate
        for s in &j.subjects {
            sort_of(s, &j.ctx, self.sig)?;
        }
        let mut cart = j.ctx.cart.clone();
        match j.kind {
            JudgmentKind::CtxOk => Ok(None),
            JudgmentKind::CartTypeOk => {
                self.expect_type(&mut cart, &j.subjects[0], Sort::CartType)?;
                Ok(None)
            }
            JudgmentKind::LinTypeOk => {
                self.expect_type(&mut cart, &j.subjects[0], Sort::LinType)?;
                Ok(None)
            }
            JudgmentKind::CartTermHasType => {
                let [e, ty] = &j.subjects[..] else {
                    return Err(TypeError::Internal("bad judgment arity".into()));
                };
                self.expect_type(&mut cart, ty, Sort::CartType)?;
                self.check_cart(&mut cart, e, ty)
                    .map(|_| None)
            }
            JudgmentKind::LinTermHasType => {
                let [e, ty] = &j.subjects[..] else {
                    return Err(TypeError::Internal("bad judgment arity".into()));
                };
                self.expect_type(&mut cart, ty, Sort::LinType)?;
                let mut zone = Zone::from_ctx(&j.ctx);
                self.check_lin(&mut cart, &mut zone, e, ty)?;
                zone.finalize().map_err(zone_err)?;
                Ok(None)
            }
            JudgmentKind::CartEq | JudgmentKind::LinEq => {
                let [lhs, rhs, ty] = &j.subjects[..] else {
                    return Err(TypeError::Internal("bad judgment arity".into()));
                };
                let want = if j.kind == JudgmentKind::CartEq {
                    Sort::CartType
                } else {
                    Sort::LinType
                };
                self.expect_type(&mut cart, ty, want)?;
                if j.kind == JudgmentKind::CartEq {
                    self.check_cart(&mut cart, lhs, ty)?;
                    self.check_cart(&mut cart, rhs, ty)?;
                } else {
                    for side in [lhs, rhs] {
                        let mut zone = Zone::from_ctx(&j.ctx);
                        self.check_lin(&mut cart, &mut zone, side, ty)?;
                        zone.finalize().map_err(zone_err)?;
                    }
                }
                let (n1, tl) = eq::normalize(self.sig, lhs, &self.flags, self.budget)?;
                let (n2, tr) = eq::normalize(self.sig, rhs, &self.flags, self.budget)?;
                let equal = alpha_eq(&n1, &n2)
                    || eq::equal(self.sig, ty, &n1, &n2, &self.flags, self.budget)?;
                if equal {
                    Ok(Some(EqTraces { lhs: tl, rhs: tr }))
                } else {
                    Err(TypeError::TypeMismatch {
                        expected: describe(&n2),
                        found: describe(&n1),
                    })
                }
            }
        }
    }
}

/// Instantiate a one-binder motive at the generic pair (x, y), yielding a
/// type under the two binders.
fn motive_at_pair(motive: &Expr) -> Result<Expr> {
    let lifted = ops::shift(motive, 1, 1)?;
    Ok(ops::subst(&lifted, &pairc(var(1), var(0)), 0)?)
}

/// Instantiate a three-binder identity motive on the diagonal z, z, refl z,
/// yielding a type under one binder.
fn motive_on_diagonal(motive: &Expr) -> Result<Expr> {
    let s1 = ops::subst(motive, &refl(var(0)), 0)?;
    Ok(ops::subst(&s1, &var(0), 0)?)
}

/// Instantiate a three-binder identity motive at concrete endpoints.
fn motive_at_endpoints(motive: &Expr, m: &Expr, n: &Expr, p: &Expr) -> Result<Expr> {
    let s1 = ops::subst(motive, &ops::shift(p, 0, 2)?, 0)?;
    let s2 = ops::subst(&s1, &ops::shift(n, 0, 1)?, 0)?;
    Ok(ops::subst(&s2, m, 0)?)
}
