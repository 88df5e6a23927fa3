//! Definitional equality: the rewrite system, traces, and the type-directed
//! decision procedure.

use thiserror::Error;

use crate::syntax::{alpha_eq, ops, Expr, Signature};

mod hoist;
pub mod navigate;
mod rules;

pub use navigate::{replace_at, subterm_at, Path};
pub use rules::Rule;

/// Which optional equations are in force for a checking unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EqFlags {
    /// Commuting conversions: hoist let-eliminators out of linear
    /// elimination frames, with a canonical let-prefix order.
    pub nat_l: bool,
    /// Uniqueness for the cartesian pair, and eta for the additive pair.
    pub eta_sigma: bool,
    /// Uniqueness for the positive linear formers: the dependent sum let,
    /// the tensor let and the unit let.
    pub eta_sub: bool,
    /// The univalence introduction rule and its computation rule.
    pub ua_rules: bool,
}

impl EqFlags {
    pub fn all_corpus() -> EqFlags {
        EqFlags { nat_l: true, eta_sigma: true, eta_sub: true, ua_rules: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EqError {
    #[error("step budget of {0} exceeded during normalization")]
    NonTermination(u64),
    #[error("index arithmetic failed during rewriting: {0}")]
    Ops(#[from] ops::OpError),
    #[error("rule {rule} does not apply at path {path:?}")]
    BadStep { rule: &'static str, path: Path },
}

/// One rewrite: which rule fired and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub path: Path,
}

/// A replayable reduction trace.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RedexTrace {
    pub steps: Vec<TraceStep>,
}

impl RedexTrace {
    pub fn rule_names(&self) -> Vec<&'static str> {
        self.steps.iter().map(|s| s.rule.name()).collect()
    }
}

/// Apply one named rule at one position.
pub fn apply_at(sig: &Signature, e: &Expr, rule: Rule, path: &[u32], flags: &EqFlags) -> Result<Expr, EqError> {
    let sub = subterm_at(e, path)
        .ok_or(EqError::BadStep { rule: rule.name(), path: path.to_vec() })?;
    let new = match rule {
        Rule::NatL | Rule::NatTensor | Rule::NatSub | Rule::NatUnit | Rule::LetSwap => {
            hoist::apply_hoist_rule(sub, rule)
        }
        _ => rules::apply_root(sig, sub, rule, flags),
    }
    .ok_or(EqError::BadStep { rule: rule.name(), path: path.to_vec() })?;
    Ok(replace_at(e, path, new))
}

/// Replay a trace from a source term.
pub fn replay(sig: &Signature, e: &Expr, trace: &RedexTrace, flags: &EqFlags) -> Result<Expr, EqError> {
    let mut cur = e.clone();
    for step in &trace.steps {
        cur = apply_at(sig, &cur, step.rule, &step.path, flags)?;
    }
    Ok(cur)
}

/// All main-scan redex positions, leftmost-outermost first. Hoist and swap
/// positions are not included; they run as a separate pass.
pub fn list_redexes(sig: &Signature, e: &Expr, flags: &EqFlags) -> Vec<(Rule, Path)> {
    fn go(sig: &Signature, e: &Expr, flags: &EqFlags, path: &mut Path, out: &mut Vec<(Rule, Path)>) {
        if let Some(rule) = rules::match_root(sig, e, flags) {
            out.push((rule, path.clone()));
        }
        for (idx, (child, _)) in e.children().iter().enumerate() {
            path.push(idx as u32);
            go(sig, child, flags, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(sig, e, flags, &mut Vec::new(), &mut out);
    out
}

fn find_redex(sig: &Signature, e: &Expr, flags: &EqFlags) -> Option<(Rule, Path)> {
    fn go(sig: &Signature, e: &Expr, flags: &EqFlags, path: &mut Path) -> Option<(Rule, Path)> {
        if let Some(rule) = rules::match_root(sig, e, flags) {
            return Some((rule, path.clone()));
        }
        for (idx, (child, _)) in e.children().iter().enumerate() {
            path.push(idx as u32);
            if let Some(found) = go(sig, child, flags, path) {
                return Some(found);
            }
            path.pop();
        }
        None
    }
    go(sig, e, flags, &mut Vec::new())
}

/// Normalize under the rewrite system. Normal order: commuting conversions
/// run to fixpoint first when enabled, then the leftmost-outermost redex
/// fires, until no rule applies or the budget runs out.
pub fn normalize(
    sig: &Signature,
    e: &Expr,
    flags: &EqFlags,
    budget: u64,
) -> Result<(Expr, RedexTrace), EqError> {
    let mut cur = e.clone();
    let mut trace = RedexTrace::default();
    let mut left = budget;
    let spend = |left: &mut u64| -> Result<(), EqError> {
        if *left == 0 {
            return Err(EqError::NonTermination(budget));
        }
        *left -= 1;
        Ok(())
    };
    loop {
        if flags.nat_l {
            while let Some((rule, path)) = hoist::find_hoist(&cur) {
                spend(&mut left)?;
                cur = apply_at(sig, &cur, rule, &path, flags)?;
                trace.steps.push(TraceStep { rule, path });
            }
        }
        let Some((rule, path)) = find_redex(sig, &cur, flags) else { break };
        spend(&mut left)?;
        cur = apply_at(sig, &cur, rule, &path, flags)?;
        trace.steps.push(TraceStep { rule, path });
    }
    Ok((cur, trace))
}

/// Normal form without the trace.
pub fn reduce(sig: &Signature, e: &Expr, flags: &EqFlags, budget: u64) -> Result<Expr, EqError> {
    normalize(sig, e, flags, budget).map(|(e, _)| e)
}

/// Type-directed definitional equality of two terms at a common type. Both
/// sides are normalized and compared up to alpha; with the sigma uniqueness
/// flag, comparison at a pair type proceeds componentwise so a neutral term
/// equals its projection pair.
pub fn equal(
    sig: &Signature,
    ty: &Expr,
    e1: &Expr,
    e2: &Expr,
    flags: &EqFlags,
    budget: u64,
) -> Result<bool, EqError> {
    if alpha_eq(e1, e2) {
        return Ok(true);
    }
    let n1 = reduce(sig, e1, flags, budget)?;
    let n2 = reduce(sig, e2, flags, budget)?;
    if alpha_eq(&n1, &n2) {
        return Ok(true);
    }
    if flags.eta_sigma {
        let nty = reduce(sig, ty, flags, budget)?;
        match nty {
            Expr::Sigma(a, b) => {
                let fst1 = reduce(sig, &Expr::Pr1(n1.clone().boxed()), flags, budget)?;
                let fst2 = reduce(sig, &Expr::Pr1(n2.clone().boxed()), flags, budget)?;
                if !equal(sig, &a, &fst1, &fst2, flags, budget)? {
                    return Ok(false);
                }
                let bty = ops::subst(&b, &fst1, 0)?;
                let snd1 = Expr::Pr2(n1.boxed());
                let snd2 = Expr::Pr2(n2.boxed());
                return equal(sig, &bty, &snd1, &snd2, flags, budget);
            }
            Expr::With(a, b) => {
                let f1 = Expr::WithFst(n1.clone().boxed());
                let f2 = Expr::WithFst(n2.clone().boxed());
                if !equal(sig, &a, &f1, &f2, flags, budget)? {
                    return Ok(false);
                }
                let s1 = Expr::WithSnd(n1.boxed());
                let s2 = Expr::WithSnd(n2.boxed());
                return equal(sig, &b, &s1, &s2, flags, budget);
            }
            _ => {}
        }
    }
    Ok(false)
}

/// Equality of two types: normalize and compare up to alpha.
pub fn equal_types(
    sig: &Signature,
    t1: &Expr,
    t2: &Expr,
    flags: &EqFlags,
    budget: u64,
) -> Result<bool, EqError> {
    if alpha_eq(t1, t2) {
        return Ok(true);
    }
    let n1 = reduce(sig, t1, flags, budget)?;
    let n2 = reduce(sig, t2, flags, budget)?;
    Ok(alpha_eq(&n1, &n2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::expr::*;
    use crate::syntax::DefEntry;

    fn sig() -> Signature {
        Signature::default()
    }

    fn norm(e: &Expr, flags: &EqFlags) -> Expr {
        reduce(&sig(), e, flags, 10_000).unwrap()
    }

    #[test]
    fn beta_pi() {
        let e = app(lam(Expr::UnivU, var(0)), cnst_free());
        assert_eq!(norm(&e, &EqFlags::default()), cnst_free());
    }

    fn cnst_free() -> Expr {
        mintro(Expr::UnitIntro)
    }

    #[test]
    fn beta_sqcap_matches_cap_rule() {
        // (\x. b)(a) = b[a/x] for the linear dependent product
        let e = sqapp(sqlam(Expr::UnivU, lift(var(0))), cnst_free());
        let (n, tr) = normalize(&sig(), &e, &EqFlags::default(), 100).unwrap();
        assert_eq!(n, lift(cnst_free()));
        assert_eq!(tr.rule_names(), vec!["⊓-C"]);
    }

    #[test]
    fn l_let_computes() {
        // let x be (lift s) in t = t[s/x]
        let e = llet(lift(cnst_free()), lift(var(0)));
        let (n, tr) = normalize(&sig(), &e, &EqFlags::default(), 100).unwrap();
        assert_eq!(n, lift(cnst_free()));
        assert_eq!(tr.rule_names(), vec!["L-C"]);
    }

    #[test]
    fn l_u_collapses_unique_lift() {
        // let x be y in (lift x) = y
        let e = llet(lvar(9), lift(var(0)));
        let (n, tr) = normalize(&sig(), &e, &EqFlags::default(), 100).unwrap();
        assert_eq!(n, lvar(9));
        assert_eq!(tr.rule_names(), vec!["L-U"]);
    }

    #[test]
    fn l_u_ignores_non_lift_use() {
        // let x be y in lift (x, x) is stuck: two uses, and not of lift shape
        let e = llet(lvar(9), lift(pairc(var(0), var(0))));
        assert_eq!(norm(&e, &EqFlags::default()), e);
    }

    #[test]
    fn m_collapses() {
        let b = Expr::UnitIntro;
        let e = melim(mintro(b.clone()));
        assert_eq!(norm(&e, &EqFlags::default()), b);
        let t = cnst_free();
        let e2 = mintro(melim(t.clone()));
        assert_eq!(norm(&e2, &EqFlags::default()), t);
    }

    #[test]
    fn nat_l_hoists_out_of_let_scrutinee() {
        // let c be (let x be t in u) in e  =  let x be t in (let c be u in e)
        let flags = EqFlags { nat_l: true, ..Default::default() };
        let inner = llet(lvar(1), lift(var(0)));
        let e = llet(inner, lift(var(0)));
        let n = norm(&e, &flags);
        assert_eq!(n, lvar(1));
    }

    #[test]
    fn delta_unfolds_and_budget_guards_loops() {
        let mut s = Signature::default();
        let i = s.push(DefEntry { name: "loop".into(), ty: Expr::UnivU, body: None });
        // tie the knot by hand: loop unfolds to itself
        let mut s2 = Signature::default();
        s2.push(DefEntry { name: "loop".into(), ty: Expr::UnivU, body: Some(cnst(i)) });
        let e = cnst(0);
        let err = reduce(&s2, &e, &EqFlags::default(), 50).unwrap_err();
        assert_eq!(err, EqError::NonTermination(50));
    }

    #[test]
    fn eta_rules_are_flagged() {
        let p = cnst_free();
        let e = pairc(pr1(p.clone()), pr2(p.clone()));
        assert_eq!(norm(&e, &EqFlags::default()), e);
        let flags = EqFlags { eta_sigma: true, ..Default::default() };
        assert_eq!(norm(&e, &flags), p);

        let q = lvar(4);
        let es = sqlet(q.clone(), 7, sqpair(var(0), lvar(7)));
        assert_eq!(norm(&es, &EqFlags::default()), es);
        let flags = EqFlags { eta_sub: true, ..Default::default() };
        assert_eq!(norm(&es, &flags), q);
    }

    #[test]
    fn trace_replays() {
        let e = app(lam(Expr::UnivU, pairc(var(0), var(0))), cnst_free());
        let flags = EqFlags::default();
        let (n, tr) = normalize(&sig(), &e, &flags, 100).unwrap();
        assert_eq!(replay(&sig(), &e, &tr, &flags).unwrap(), n);
    }

    #[test]
    fn equal_is_reflexive_and_type_directed() {
        let flags = EqFlags::default();
        let t = cnst_free();
        assert!(equal(&sig(), &Expr::UnivU, &t, &t, &flags, 100).unwrap());
        // (pr1 p, pr2 p) vs p: off without the flag, on with it
        let p = cnst_free();
        let pair = pairc(pr1(p.clone()), pr2(p.clone()));
        let ty = sigma(Expr::UnivU, Expr::UnivU);
        assert!(!equal(&sig(), &ty, &pair, &p, &flags, 100).unwrap());
        let flags = EqFlags { eta_sigma: true, ..Default::default() };
        assert!(equal(&sig(), &ty, &pair, &p, &flags, 100).unwrap());
    }
}
