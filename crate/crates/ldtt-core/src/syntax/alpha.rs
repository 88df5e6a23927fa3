//! Alpha equivalence and linear occurrence counting.
//!
//! Cartesian binders are de Bruijn, so alpha equivalence there is plain
//! structural equality. Linear binders carry slot ids; we compare them up to
//! a consistent renaming of bound slots.

use super::expr::{Expr, SlotId};

pub fn alpha_eq(e1: &Expr, e2: &Expr) -> bool {
    let mut map: Vec<(SlotId, SlotId)> = Vec::new();
    alpha(e1, e2, &mut map)
}

fn slot_eq(s1: SlotId, s2: SlotId, map: &[(SlotId, SlotId)]) -> bool {
    // innermost binding wins on either side
    for &(a, b) in map.iter().rev() {
        if a == s1 || b == s2 {
            return a == s1 && b == s2;
        }
    }
    s1 == s2
}

fn alpha(e1: &Expr, e2: &Expr, map: &mut Vec<(SlotId, SlotId)>) -> bool {
    use Expr::*;
    match (e1, e2) {
        (CartVar(i), CartVar(j)) => i == j,
        (Const(i), Const(j)) => i == j,
        (LinVar(s1), LinVar(s2)) => slot_eq(*s1, *s2, map),
        (UnivU, UnivU) | (UnivL, UnivL) | (UnitI, UnitI) | (UnitIntro, UnitIntro)
        | (ZeroTy, ZeroTy) | (TopTy, TopTy) | (TopIntro, TopIntro) => true,

        (Pi(a1, b1), Pi(a2, b2))
        | (Lam(a1, b1), Lam(a2, b2))
        | (App(a1, b1), App(a2, b2))
        | (Sigma(a1, b1), Sigma(a2, b2))
        | (PairC(a1, b1), PairC(a2, b2))
        | (Sqcap(a1, b1), Sqcap(a2, b2))
        | (SqLam(a1, b1), SqLam(a2, b2))
        | (SqApp(a1, b1), SqApp(a2, b2))
        | (Sqsubset(a1, b1), Sqsubset(a2, b2))
        | (SqPair(a1, b1), SqPair(a2, b2))
        | (Tensor(a1, b1), Tensor(a2, b2))
        | (TenPair(a1, b1), TenPair(a2, b2))
        | (Lolli(a1, b1), Lolli(a2, b2))
        | (LinApp(a1, b1), LinApp(a2, b2))
        | (With(a1, b1), With(a2, b2))
        | (WithPair(a1, b1), WithPair(a2, b2))
        | (Plus(a1, b1), Plus(a2, b2)) => alpha(a1, a2, map) && alpha(b1, b2, map),

        (Pr1(a), Pr1(b))
        | (Pr2(a), Pr2(b))
        | (Refl(a), Refl(b))
        | (WithFst(a), WithFst(b))
        | (WithSnd(a), WithSnd(b))
        | (Inl(a), Inl(b))
        | (Inr(a), Inr(b))
        | (ZeroElim(a), ZeroElim(b))
        | (LTy(a), LTy(b))
        | (LIntro(a), LIntro(b))
        | (MTy(a), MTy(b))
        | (MIntro(a), MIntro(b))
        | (MElim(a), MElim(b)) => alpha(a, b, map),

        (El(t1, a), El(t2, b)) => t1 == t2 && alpha(a, b, map),
        (Id(a1, m1, n1), Id(a2, m2, n2)) => {
            alpha(a1, a2, map) && alpha(m1, m2, map) && alpha(n1, n2, map)
        }

        (
            SigElim1 { motive: c1, branch: b1, scrut: s1 },
            SigElim1 { motive: c2, branch: b2, scrut: s2 },
        ) => alpha(c1, c2, map) && alpha(b1, b2, map) && alpha(s1, s2, map),
        (
            SigElim2 { motive: c1, zone_ann: z1, branch: b1, scrut: s1 },
            SigElim2 { motive: c2, zone_ann: z2, branch: b2, scrut: s2 },
        ) => {
            alpha(c1, c2, map)
                && zone_ann_eq(z1, z2, map)
                && alpha(b1, b2, map)
                && alpha(s1, s2, map)
        }
        (
            IdElim1 { motive: c1, branch: b1, proof: p1 },
            IdElim1 { motive: c2, branch: b2, proof: p2 },
        ) => alpha(c1, c2, map) && alpha(b1, b2, map) && alpha(p1, p2, map),
        (
            IdElim2 { motive: c1, zone_ann: z1, branch: b1, proof: p1 },
            IdElim2 { motive: c2, zone_ann: z2, branch: b2, proof: p2 },
        ) => {
            alpha(c1, c2, map)
                && zone_ann_eq(z1, z2, map)
                && alpha(b1, b2, map)
                && alpha(p1, p2, map)
        }

        (
            SqLet { scrut: t1, slot: s1, body: b1 },
            SqLet { scrut: t2, slot: s2, body: b2 },
        ) => alpha(t1, t2, map) && under(map, &[(*s1, *s2)], |m| alpha(b1, b2, m)),
        (
            TenLet { scrut: t1, slots: (x1, y1), body: b1 },
            TenLet { scrut: t2, slots: (x2, y2), body: b2 },
        ) => alpha(t1, t2, map) && under(map, &[(*x1, *x2), (*y1, *y2)], |m| alpha(b1, b2, m)),
        (UnitLet { scrut: t1, body: b1 }, UnitLet { scrut: t2, body: b2 }) => {
            alpha(t1, t2, map) && alpha(b1, b2, map)
        }
        (
            LinLam { ann: a1, slot: s1, body: b1 },
            LinLam { ann: a2, slot: s2, body: b2 },
        ) => alpha(a1, a2, map) && under(map, &[(*s1, *s2)], |m| alpha(b1, b2, m)),
        (
            PlusCase { scrut: t1, left_slot: l1, left: e1l, right_slot: r1, right: e1r },
            PlusCase { scrut: t2, left_slot: l2, left: e2l, right_slot: r2, right: e2r },
        ) => {
            alpha(t1, t2, map)
                && under(map, &[(*l1, *l2)], |m| alpha(e1l, e2l, m))
                && under(map, &[(*r1, *r2)], |m| alpha(e1r, e2r, m))
        }
        (LLet { scrut: t1, body: b1 }, LLet { scrut: t2, body: b2 }) => {
            alpha(t1, t2, map) && alpha(b1, b2, map)
        }
        (
            Ua { fwd: f1, back: g1, back2: h1, coh1: p1, coh2: q1 },
            Ua { fwd: f2, back: g2, back2: h2, coh1: p2, coh2: q2 },
        ) => {
            alpha(f1, f2, map)
                && alpha(g1, g2, map)
                && alpha(h1, h2, map)
                && alpha(p1, p2, map)
                && alpha(q1, q2, map)
        }

        _ => false,
    }
}

fn under(
    map: &mut Vec<(SlotId, SlotId)>,
    binds: &[(SlotId, SlotId)],
    f: impl FnOnce(&mut Vec<(SlotId, SlotId)>) -> bool,
) -> bool {
    map.extend_from_slice(binds);
    let r = f(map);
    map.truncate(map.len() - binds.len());
    r
}

fn zone_ann_eq(
    z1: &[(SlotId, Expr)],
    z2: &[(SlotId, Expr)],
    map: &mut Vec<(SlotId, SlotId)>,
) -> bool {
    if z1.len() != z2.len() {
        return false;
    }
    let mut a: Vec<_> = z1.iter().collect();
    let mut b: Vec<_> = z2.iter().collect();
    a.sort_by_key(|(s, _)| *s);
    b.sort_by_key(|(s, _)| *s);
    a.iter()
        .zip(&b)
        .all(|((s1, t1), (s2, t2))| slot_eq(*s1, *s2, map) && alpha(t1, t2, map))
}

/// Count free occurrences of a linear slot. Children combine additively,
/// except the two branches of a with-pair or a case, which run in parallel
/// and count as the maximum. The kernel separately enforces that parallel
/// branches agree.
pub fn linear_occurrences(e: &Expr, slot: SlotId) -> u32 {
    use Expr::*;
    match e {
        LinVar(s) => u32::from(*s == slot),
        WithPair(a, b) => linear_occurrences(a, slot).max(linear_occurrences(b, slot)),
        PlusCase { scrut, left_slot, left, right_slot, right } => {
            let l = if *left_slot == slot { 0 } else { linear_occurrences(left, slot) };
            let r = if *right_slot == slot { 0 } else { linear_occurrences(right, slot) };
            linear_occurrences(scrut, slot) + l.max(r)
        }
        LinLam { slot: s, body, .. } if *s == slot => 0,
        SqLet { scrut, slot: s, body } => {
            let b = if *s == slot { 0 } else { linear_occurrences(body, slot) };
            linear_occurrences(scrut, slot) + b
        }
        TenLet { scrut, slots, body } => {
            let b = if slots.0 == slot || slots.1 == slot {
                0
            } else {
                linear_occurrences(body, slot)
            };
            linear_occurrences(scrut, slot) + b
        }
        // zone annotations are typing metadata, not uses
        SigElim2 { branch, scrut, .. } => {
            linear_occurrences(branch, slot) + linear_occurrences(scrut, slot)
        }
        IdElim2 { branch, proof, .. } => {
            linear_occurrences(branch, slot) + linear_occurrences(proof, slot)
        }
        _ => e.children().iter().map(|(c, _)| linear_occurrences(c, slot)).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::expr::*;

    #[test]
    fn renamed_linear_binders_are_alpha_equal() {
        let a = linlam(Expr::UnitI, 0, lvar(0));
        let b = linlam(Expr::UnitI, 7, lvar(7));
        assert!(alpha_eq(&a, &b));
    }

    #[test]
    fn different_binding_structure_is_not_alpha_equal() {
        let a = pi(cnst(0), var(0));
        let b = pi(cnst(0), var(1));
        assert!(!alpha_eq(&a, &b));
    }

    #[test]
    fn free_slots_compare_by_identity() {
        assert!(alpha_eq(&lvar(3), &lvar(3)));
        assert!(!alpha_eq(&lvar(3), &lvar(4)));
    }

    #[test]
    fn bound_slot_cannot_match_free_slot() {
        let a = linlam(Expr::UnitI, 0, tenpair(lvar(0), lvar(9)));
        let b = linlam(Expr::UnitI, 9, tenpair(lvar(9), lvar(9)));
        assert!(!alpha_eq(&a, &b));
    }

    #[test]
    fn occurrences_tensor_vs_with() {
        let s = 2;
        assert_eq!(linear_occurrences(&lvar(s), s), 1);
        assert_eq!(linear_occurrences(&tenpair(lvar(s), lvar(s)), s), 2);
        assert_eq!(linear_occurrences(&withpair(lvar(s), lvar(s)), s), 1);
        assert_eq!(linear_occurrences(&tenpair(lvar(s), lvar(3)), s), 1);
    }

    #[test]
    fn occurrences_respect_shadowing() {
        let t = linlam(Expr::UnitI, 5, lvar(5));
        assert_eq!(linear_occurrences(&t, 5), 0);
    }
}
