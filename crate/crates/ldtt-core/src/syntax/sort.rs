//! Total syntactic sort computation.
//!
//! Every scope-correct expression has exactly one sort, read off from its
//! head constructor and the sorts of its children. This is the well-sorting
//! gate the kernel runs before type checking proper.

use thiserror::Error;

use super::ctx::{Ctx, Signature};
use super::expr::{Expr, SlotId, Sort, UnivTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error("variable out of scope: {0}")]
    OutOfScope(String),
    #[error("ill-formed node: {0}")]
    IllFormedNode(String),
}

struct Scope {
    cart_depth: u32,
    sig_len: u32,
    slots: Vec<SlotId>,
}

pub fn sort_of(e: &Expr, ctx: &Ctx, sig: &Signature) -> Result<Sort, SortError> {
    let mut scope = Scope {
        cart_depth: ctx.cart.len() as u32,
        sig_len: sig.len() as u32,
        slots: ctx.lin.iter().map(|(s, _)| *s).collect(),
    };
    go(e, &mut scope)
}

fn expect(e: &Expr, scope: &mut Scope, want: Sort, what: &str) -> Result<(), SortError> {
    let got = go(e, scope)?;
    if got == want {
        Ok(())
    } else {
        Err(SortError::IllFormedNode(format!("{what}: expected {want:?}, found {got:?}")))
    }
}

fn under_cart<T>(
    scope: &mut Scope,
    n: u32,
    f: impl FnOnce(&mut Scope) -> Result<T, SortError>,
) -> Result<T, SortError> {
    scope.cart_depth += n;
    let r = f(scope);
    scope.cart_depth -= n;
    r
}

fn under_slots<T>(
    scope: &mut Scope,
    slots: &[SlotId],
    f: impl FnOnce(&mut Scope) -> Result<T, SortError>,
) -> Result<T, SortError> {
    scope.slots.extend_from_slice(slots);
    let r = f(scope);
    scope.slots.truncate(scope.slots.len() - slots.len());
    r
}

fn go(e: &Expr, sc: &mut Scope) -> Result<Sort, SortError> {
    use Expr::*;
    use Sort::*;
    Ok(match e {
        CartVar(i) => {
            if *i < sc.cart_depth {
                CartTerm
            } else {
                return Err(SortError::OutOfScope(format!("cartesian index {i}")));
            }
        }
        LinVar(s) => {
            if sc.slots.iter().rev().any(|t| t == s) {
                LinTerm
            } else {
                return Err(SortError::OutOfScope(format!("linear slot {s}")));
            }
        }
        Const(i) => {
            if *i < sc.sig_len {
                CartTerm
            } else {
                return Err(SortError::OutOfScope(format!("signature constant {i}")));
            }
        }
        UnivU | UnivL => CartType,
        UnitI | ZeroTy | TopTy => LinType,
        UnitIntro | TopIntro => LinTerm,

        Pi(a, b) | Sigma(a, b) => {
            expect(a, sc, CartType, "binder domain")?;
            under_cart(sc, 1, |sc| expect(b, sc, CartType, "binder body"))?;
            CartType
        }
        Lam(a, b) => {
            expect(a, sc, CartType, "lambda annotation")?;
            under_cart(sc, 1, |sc| expect(b, sc, CartTerm, "lambda body"))?;
            CartTerm
        }
        App(f, a) => {
            expect(f, sc, CartTerm, "application head")?;
            expect(a, sc, CartTerm, "application argument")?;
            CartTerm
        }
        PairC(a, b) => {
            expect(a, sc, CartTerm, "pair component")?;
            expect(b, sc, CartTerm, "pair component")?;
            CartTerm
        }
        Pr1(a) | Pr2(a) => {
            expect(a, sc, CartTerm, "projection subject")?;
            CartTerm
        }
        SigElim1 { motive, branch, scrut } => {
            under_cart(sc, 1, |sc| expect(motive, sc, CartType, "split motive"))?;
            under_cart(sc, 2, |sc| expect(branch, sc, CartTerm, "split branch"))?;
            expect(scrut, sc, CartTerm, "split scrutinee")?;
            CartTerm
        }
        SigElim2 { motive, zone_ann, branch, scrut } => {
            under_cart(sc, 1, |sc| expect(motive, sc, LinType, "split motive"))?;
            for (_, t) in zone_ann {
                under_cart(sc, 2, |sc| expect(t, sc, LinType, "split zone annotation"))?;
            }
            under_cart(sc, 2, |sc| expect(branch, sc, LinTerm, "split branch"))?;
            expect(scrut, sc, CartTerm, "split scrutinee")?;
            LinTerm
        }
        Id(a, m, n) => {
            expect(a, sc, CartType, "identity type subject")?;
            expect(m, sc, CartTerm, "identity endpoint")?;
            expect(n, sc, CartTerm, "identity endpoint")?;
            CartType
        }
        Refl(m) => {
            expect(m, sc, CartTerm, "refl subject")?;
            CartTerm
        }
        IdElim1 { motive, branch, proof } => {
            under_cart(sc, 3, |sc| expect(motive, sc, CartType, "J motive"))?;
            under_cart(sc, 1, |sc| expect(branch, sc, CartTerm, "J branch"))?;
            expect(proof, sc, CartTerm, "J proof")?;
            CartTerm
        }
        IdElim2 { motive, zone_ann, branch, proof } => {
            under_cart(sc, 3, |sc| expect(motive, sc, LinType, "J motive"))?;
            for (_, t) in zone_ann {
                under_cart(sc, 3, |sc| expect(t, sc, LinType, "J zone annotation"))?;
            }
            under_cart(sc, 1, |sc| expect(branch, sc, LinTerm, "J branch"))?;
            expect(proof, sc, CartTerm, "J proof")?;
            LinTerm
        }
        El(tag, a) => {
            expect(a, sc, CartTerm, "El code")?;
            match tag {
                UnivTag::Cart => CartType,
                UnivTag::Lin => LinType,
            }
        }
        Sqcap(a, b) | Sqsubset(a, b) => {
            expect(a, sc, CartType, "binder domain")?;
            under_cart(sc, 1, |sc| expect(b, sc, LinType, "binder body"))?;
            LinType
        }
        SqLam(a, b) => {
            expect(a, sc, CartType, "lambda annotation")?;
            under_cart(sc, 1, |sc| expect(b, sc, LinTerm, "lambda body"))?;
            LinTerm
        }
        SqApp(f, a) => {
            expect(f, sc, LinTerm, "application head")?;
            expect(a, sc, CartTerm, "application argument")?;
            LinTerm
        }
        SqPair(s, b) => {
            expect(s, sc, CartTerm, "pair index")?;
            expect(b, sc, LinTerm, "pair component")?;
            LinTerm
        }
        SqLet { scrut, slot, body } => {
            expect(scrut, sc, LinTerm, "let scrutinee")?;
            under_cart(sc, 1, |sc| {
                under_slots(sc, &[*slot], |sc| expect(body, sc, LinTerm, "let body"))
            })?;
            LinTerm
        }
        Tensor(a, b) | Lolli(a, b) | With(a, b) | Plus(a, b) => {
            expect(a, sc, LinType, "linear type component")?;
            expect(b, sc, LinType, "linear type component")?;
            LinType
        }
        TenPair(a, b) => {
            expect(a, sc, LinTerm, "pair component")?;
            expect(b, sc, LinTerm, "pair component")?;
            LinTerm
        }
        TenLet { scrut, slots, body } => {
            expect(scrut, sc, LinTerm, "let scrutinee")?;
            under_slots(sc, &[slots.0, slots.1], |sc| expect(body, sc, LinTerm, "let body"))?;
            LinTerm
        }
        UnitLet { scrut, body } => {
            expect(scrut, sc, LinTerm, "let scrutinee")?;
            expect(body, sc, LinTerm, "let body")?;
            LinTerm
        }
        LinLam { ann, slot, body } => {
            expect(ann, sc, LinType, "lambda annotation")?;
            under_slots(sc, &[*slot], |sc| expect(body, sc, LinTerm, "lambda body"))?;
            LinTerm
        }
        LinApp(f, a) => {
            expect(f, sc, LinTerm, "application head")?;
            expect(a, sc, LinTerm, "application argument")?;
            LinTerm
        }
        WithPair(a, b) => {
            expect(a, sc, LinTerm, "pair component")?;
            expect(b, sc, LinTerm, "pair component")?;
            LinTerm
        }
        WithFst(a) | WithSnd(a) => {
            expect(a, sc, LinTerm, "projection subject")?;
            LinTerm
        }
        Inl(a) | Inr(a) => {
            expect(a, sc, LinTerm, "injection subject")?;
            LinTerm
        }
        PlusCase { scrut, left_slot, left, right_slot, right } => {
            expect(scrut, sc, LinTerm, "case scrutinee")?;
            under_slots(sc, &[*left_slot], |sc| expect(left, sc, LinTerm, "case branch"))?;
            under_slots(sc, &[*right_slot], |sc| expect(right, sc, LinTerm, "case branch"))?;
            LinTerm
        }
        ZeroElim(a) => {
            expect(a, sc, LinTerm, "abort scrutinee")?;
            LinTerm
        }
        LTy(a) => {
            expect(a, sc, CartType, "L argument")?;
            LinType
        }
        LIntro(a) => {
            expect(a, sc, CartTerm, "lift subject")?;
            LinTerm
        }
        LLet { scrut, body } => {
            expect(scrut, sc, LinTerm, "let scrutinee")?;
            under_cart(sc, 1, |sc| expect(body, sc, LinTerm, "let body"))?;
            LinTerm
        }
        MTy(a) => {
            expect(a, sc, LinType, "M argument")?;
            CartType
        }
        MIntro(a) => {
            expect(a, sc, LinTerm, "sig subject")?;
            CartTerm
        }
        MElim(a) => {
            expect(a, sc, CartTerm, "unsig subject")?;
            LinTerm
        }
        Ua { fwd, back, back2, coh1, coh2 } => {
            expect(fwd, sc, LinTerm, "ua forward map")?;
            expect(back, sc, LinTerm, "ua backward map")?;
            expect(back2, sc, LinTerm, "ua backward map")?;
            expect(coh1, sc, CartTerm, "ua coherence")?;
            expect(coh2, sc, CartTerm, "ua coherence")?;
            CartTerm
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::expr::*;

    fn empty() -> (Ctx, Signature) {
        (Ctx::default(), Signature::default())
    }

    #[test]
    fn unit_type_is_linear() {
        let (ctx, sig) = empty();
        assert_eq!(sort_of(&Expr::UnitI, &ctx, &sig), Ok(Sort::LinType));
    }

    #[test]
    fn sqcap_of_cart_and_linear_is_linear() {
        let (mut ctx, sig) = empty();
        ctx.cart.push(Expr::UnivU);
        let t = sqcap(el_u(var(0)), Expr::UnitI);
        assert_eq!(sort_of(&t, &ctx, &sig), Ok(Sort::LinType));
    }

    #[test]
    fn mintro_of_linear_term_is_cartesian() {
        let (ctx, sig) = empty();
        let t = mintro(Expr::UnitIntro);
        assert_eq!(sort_of(&t, &ctx, &sig), Ok(Sort::CartTerm));
    }

    #[test]
    fn out_of_scope_and_ill_formed_are_reported() {
        let (ctx, sig) = empty();
        assert!(matches!(sort_of(&var(0), &ctx, &sig), Err(SortError::OutOfScope(_))));
        // a lambda whose body is a type is not a term former
        let bad = lam(Expr::UnivU, Expr::UnivU);
        assert!(matches!(sort_of(&bad, &ctx, &sig), Err(SortError::IllFormedNode(_))));
    }

    #[test]
    fn sort_is_stable_under_alpha() {
        let (mut ctx, sig) = empty();
        ctx.lin.push((3, Expr::UnitI));
        let a = linlam(Expr::UnitI, 0, tenpair(lvar(0), lvar(3)));
        let b = linlam(Expr::UnitI, 9, tenpair(lvar(9), lvar(3)));
        assert!(crate::syntax::alpha_eq(&a, &b));
        assert_eq!(sort_of(&a, &ctx, &sig), sort_of(&b, &ctx, &sig));
    }
}
