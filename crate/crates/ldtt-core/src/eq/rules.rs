//! The rewrite rules, as root-position pattern matches.

use crate::syntax::{alpha_eq, ops, Expr, Signature, UnivTag};

use super::navigate::{replace_at, Path};
use super::EqFlags;

/// Every rewrite rule the normalizer can fire. Names follow the calculus
/// labels where those exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    PiC,
    SqcapC,
    LolliC,
    SigPr1,
    SigPr2,
    WithC1,
    WithC2,
    PlusC1,
    PlusC2,
    TensorC,
    UnitC,
    SqsubC,
    LC,
    LU,
    MC1,
    MC2,
    SigC,
    IdC,
    Delta,
    EtaSigma,
    EtaSub,
    TensorU,
    UnitU,
    WithEta,
    UaC1,
    NatL,
    NatTensor,
    NatSub,
    NatUnit,
    LetSwap,
}

impl Rule {
    pub fn name(self) -> &'static str {
        use Rule::*;
        match self {
            PiC => "Π-C",
            SqcapC => "⊓-C",
            LolliC => "⊸-C",
            SigPr1 => "Σ-pr1",
            SigPr2 => "Σ-pr2",
            WithC1 => "&-C1",
            WithC2 => "&-C2",
            PlusC1 => "⊕-C1",
            PlusC2 => "⊕-C2",
            TensorC => "⊗-C",
            UnitC => "I-C",
            SqsubC => "⊏-C",
            LC => "L-C",
            LU => "L-U",
            MC1 => "M-C1",
            MC2 => "M-C2",
            SigC => "Σ-C",
            IdC => "Id-C",
            Delta => "δ",
            EtaSigma => "eta-Σ",
            EtaSub => "eta-⊏",
            TensorU => "⊗-U",
            UnitU => "I-U",
            WithEta => "&-η",
            UaC1 => "ua-C1",
            NatL => "Nat_L",
            NatTensor => "⊗-Nat",
            NatSub => "⊏-Nat",
            NatUnit => "I-Nat",
            LetSwap => "let-order",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        use Rule::*;
        let all = [
            PiC, SqcapC, LolliC, SigPr1, SigPr2, WithC1, WithC2, PlusC1, PlusC2, TensorC,
            UnitC, SqsubC, LC, LU, MC1, MC2, SigC, IdC, Delta, EtaSigma, EtaSub, TensorU,
            UnitU, WithEta, UaC1, NatL, NatTensor, NatSub, NatUnit, LetSwap,
        ];
        all.into_iter().find(|r| r.name() == name)
    }
}

/// Find the unique free occurrence of the let-bound variable in `body` that
/// has the shape `lift x`, with no other occurrences. Returns its path and
/// crossed binder depth.
fn lu_occurrence(body: &Expr) -> Option<(Path, u32)> {
    fn scan(e: &Expr, depth: u32, path: &mut Path, hits: &mut Vec<(Path, u32, bool)>) {
        if let Expr::CartVar(i) = e {
            if *i == depth {
                hits.push((path.clone(), depth, false));
                return;
            }
        }
        if let Expr::LIntro(inner) = e {
            if matches!(inner.as_ref(), Expr::CartVar(i) if *i == depth) {
                hits.push((path.clone(), depth, true));
                return;
            }
        }
        for (idx, (child, b)) in e.children().into_iter().enumerate() {
            path.push(idx as u32);
            scan(child, depth + b, path, hits);
            path.pop();
        }
    }
    let mut hits = Vec::new();
    scan(body, 0, &mut Vec::new(), &mut hits);
    match hits.as_slice() {
        [(path, depth, true)] => Some((path.clone(), *depth)),
        _ => None,
    }
}

/// Is there a root-position redex here? Checks in a fixed priority order.
pub fn match_root(sig: &Signature, e: &Expr, flags: &EqFlags) -> Option<Rule> {
    use Expr::*;
    match e {
        App(f, _) if matches!(f.as_ref(), Lam(_, _)) => Some(Rule::PiC),
        SqApp(f, _) if matches!(f.as_ref(), SqLam(_, _)) => Some(Rule::SqcapC),
        LinApp(f, _) if matches!(f.as_ref(), LinLam { .. }) => Some(Rule::LolliC),
        Pr1(p) if matches!(p.as_ref(), PairC(_, _)) => Some(Rule::SigPr1),
        Pr2(p) if matches!(p.as_ref(), PairC(_, _)) => Some(Rule::SigPr2),
        WithFst(p) if matches!(p.as_ref(), WithPair(_, _)) => Some(Rule::WithC1),
        WithSnd(p) if matches!(p.as_ref(), WithPair(_, _)) => Some(Rule::WithC2),
        PlusCase { scrut, .. } if matches!(scrut.as_ref(), Inl(_)) => Some(Rule::PlusC1),
        PlusCase { scrut, .. } if matches!(scrut.as_ref(), Inr(_)) => Some(Rule::PlusC2),
        TenLet { scrut, .. } if matches!(scrut.as_ref(), TenPair(_, _)) => Some(Rule::TensorC),
        UnitLet { scrut, .. } if matches!(scrut.as_ref(), UnitIntro) => Some(Rule::UnitC),
        SqLet { scrut, .. } if matches!(scrut.as_ref(), SqPair(_, _)) => Some(Rule::SqsubC),
        LLet { scrut, .. } if matches!(scrut.as_ref(), LIntro(_)) => Some(Rule::LC),
        LLet { body, .. } if lu_occurrence(body).is_some() => Some(Rule::LU),
        MElim(t) if matches!(t.as_ref(), MIntro(_)) => Some(Rule::MC1),
        MIntro(b) if matches!(b.as_ref(), MElim(_)) => Some(Rule::MC2),
        SigElim1 { scrut, .. } if matches!(scrut.as_ref(), PairC(_, _)) => Some(Rule::SigC),
        SigElim2 { scrut, .. } if matches!(scrut.as_ref(), PairC(_, _)) => Some(Rule::SigC),
        IdElim1 { proof, .. } if matches!(proof.as_ref(), Refl(_)) => Some(Rule::IdC),
        IdElim2 { proof, .. } if matches!(proof.as_ref(), Refl(_)) => Some(Rule::IdC),
        IdElim2 { .. } if flags.ua_rules && match_ua_transport(e).is_some() => Some(Rule::UaC1),
        PairC(a, b) if flags.eta_sigma => match (a.as_ref(), b.as_ref()) {
            (Pr1(p), Pr2(q)) if alpha_eq(p, q) => Some(Rule::EtaSigma),
            _ => None,
        },
        WithPair(a, b) if flags.eta_sigma => match (a.as_ref(), b.as_ref()) {
            (WithFst(p), WithSnd(q)) if alpha_eq(p, q) => Some(Rule::WithEta),
            _ => None,
        },
        SqLet { slot, body, .. } if flags.eta_sub => match body.as_ref() {
            SqPair(x, y)
                if matches!(x.as_ref(), CartVar(0))
                    && matches!(y.as_ref(), LinVar(s) if s == slot) =>
            {
                Some(Rule::EtaSub)
            }
            _ => None,
        },
        TenLet { slots, body, .. } if flags.eta_sub => match body.as_ref() {
            TenPair(x, y)
                if matches!(x.as_ref(), LinVar(s) if *s == slots.0)
                    && matches!(y.as_ref(), LinVar(s) if *s == slots.1) =>
            {
                Some(Rule::TensorU)
            }
            _ => None,
        },
        UnitLet { body, .. } if flags.eta_sub && matches!(body.as_ref(), UnitIntro) => {
            Some(Rule::UnitU)
        }
        Const(i) if sig.get(*i).map_or(false, |d| d.body.is_some()) => Some(Rule::Delta),
        _ => None,
    }
}

/// The transport-along-ua shape: an identity eliminator at the motive
/// `El x -o El y` whose branch is the linear identity function, applied to a
/// `ua` proof. Rewrites to the forward map.
fn match_ua_transport(e: &Expr) -> Option<&Expr> {
    use Expr::*;
    let IdElim2 { motive, zone_ann, branch, proof } = e else { return None };
    if !zone_ann.is_empty() {
        return None;
    }
    let Lolli(dom, cod) = motive.as_ref() else { return None };
    let (El(UnivTag::Lin, a), El(UnivTag::Lin, b)) = (dom.as_ref(), cod.as_ref()) else {
        return None;
    };
    if !matches!(a.as_ref(), CartVar(2)) || !matches!(b.as_ref(), CartVar(1)) {
        return None;
    }
    let LinLam { slot, body, .. } = branch.as_ref() else { return None };
    if !matches!(body.as_ref(), LinVar(s) if s == slot) {
        return None;
    }
    match proof.as_ref() {
        Ua { fwd, .. } => Some(fwd),
        _ => None,
    }
}

/// Apply `rule` at the root of `e`. Returns None if the pattern does not
/// match. All index shifting happens here.
pub fn apply_root(sig: &Signature, e: &Expr, rule: Rule, flags: &EqFlags) -> Option<Expr> {
    use Expr::*;
    if match_root(sig, e, flags) != Some(rule) && !matches!(rule, Rule::LU) {
        // L-U may be requested even when L-C also matches; everything else
        // must agree with the scanner.
        return None;
    }
    Some(match (rule, e) {
        (Rule::PiC, App(f, a)) => {
            let Lam(_, body) = f.as_ref() else { return None };
            ops::subst(body, a, 0).ok()?
        }
        (Rule::SqcapC, SqApp(f, a)) => {
            let SqLam(_, body) = f.as_ref() else { return None };
            ops::subst(body, a, 0).ok()?
        }
        (Rule::LolliC, LinApp(f, a)) => {
            let LinLam { slot, body, .. } = f.as_ref() else { return None };
            ops::subst_lin(body, *slot, a).ok()?
        }
        (Rule::SigPr1, Pr1(p)) => {
            let PairC(a, _) = p.as_ref() else { return None };
            a.as_ref().clone()
        }
        (Rule::SigPr2, Pr2(p)) => {
            let PairC(_, b) = p.as_ref() else { return None };
            b.as_ref().clone()
        }
        (Rule::WithC1, WithFst(p)) => {
            let WithPair(a, _) = p.as_ref() else { return None };
            a.as_ref().clone()
        }
        (Rule::WithC2, WithSnd(p)) => {
            let WithPair(_, b) = p.as_ref() else { return None };
            b.as_ref().clone()
        }
        (Rule::PlusC1, PlusCase { scrut, left_slot, left, .. }) => {
            let Inl(s) = scrut.as_ref() else { return None };
            ops::subst_lin(left, *left_slot, s).ok()?
        }
        (Rule::PlusC2, PlusCase { scrut, right_slot, right, .. }) => {
            let Inr(s) = scrut.as_ref() else { return None };
            ops::subst_lin(right, *right_slot, s).ok()?
        }
        (Rule::TensorC, TenLet { scrut, slots, body }) => {
            let TenPair(s, t) = scrut.as_ref() else { return None };
            let once = ops::subst_lin(body, slots.0, s).ok()?;
            ops::subst_lin(&once, slots.1, t).ok()?
        }
        (Rule::UnitC, UnitLet { body, .. }) => body.as_ref().clone(),
        (Rule::SqsubC, SqLet { scrut, slot, body }) => {
            let SqPair(s, b) = scrut.as_ref() else { return None };
            let closed = ops::subst(body, s, 0).ok()?;
            ops::subst_lin(&closed, *slot, b).ok()?
        }
        (Rule::LC, LLet { scrut, body }) => {
            let LIntro(s) = scrut.as_ref() else { return None };
            ops::subst(body, s, 0).ok()?
        }
        (Rule::LU, LLet { scrut, body }) => {
            let (path, depth) = lu_occurrence(body)?;
            let plugged = replace_at(body, &path, UnitIntro);
            let lowered = ops::shift(&plugged, 0, -1).ok()?;
            let replacement = ops::shift(scrut, 0, depth as i64).ok()?;
            replace_at(&lowered, &path, replacement)
        }
        (Rule::MC1, MElim(t)) => {
            let MIntro(b) = t.as_ref() else { return None };
            b.as_ref().clone()
        }
        (Rule::MC2, MIntro(b)) => {
            let MElim(t) = b.as_ref() else { return None };
            t.as_ref().clone()
        }
        (Rule::SigC, SigElim1 { branch, scrut, .. })
        | (Rule::SigC, SigElim2 { branch, scrut, .. }) => {
            let PairC(a, b) = scrut.as_ref() else { return None };
            // branch is under x (index 1) and y (index 0); close y first
            // with b lifted over x, then close x with a.
            let lifted = ops::shift(b, 0, 1).ok()?;
            let once = ops::subst(branch, &lifted, 0).ok()?;
            ops::subst(&once, a, 0).ok()?
        }
        (Rule::IdC, IdElim1 { branch, proof, .. })
        | (Rule::IdC, IdElim2 { branch, proof, .. }) => {
            let Refl(m) = proof.as_ref() else { return None };
            ops::subst(branch, m, 0).ok()?
        }
        (Rule::UaC1, _) => match_ua_transport(e)?.clone(),
        (Rule::EtaSigma, PairC(a, _)) => {
            let Pr1(p) = a.as_ref() else { return None };
            p.as_ref().clone()
        }
        (Rule::WithEta, WithPair(a, _)) => {
            let WithFst(p) = a.as_ref() else { return None };
            p.as_ref().clone()
        }
        (Rule::EtaSub, SqLet { scrut, .. })
        | (Rule::TensorU, TenLet { scrut, .. })
        | (Rule::UnitU, UnitLet { scrut, .. }) => scrut.as_ref().clone(),
        (Rule::Delta, Const(i)) => sig.get(*i)?.body.clone()?,
        _ => return None,
    })
}

