//! Positions in terms: paths of child indices, following `Expr::children`
//! order. Zone annotation types on the linear eliminators count as children.

use crate::syntax::Expr;

pub type Path = Vec<u32>;

pub fn subterm_at<'a>(e: &'a Expr, path: &[u32]) -> Option<&'a Expr> {
    let mut cur = e;
    for &i in path {
        cur = cur.children().get(i as usize)?.0;
    }
    Some(cur)
}

/// Number of cartesian binders crossed walking `path` from `e`.
pub fn binders_along(e: &Expr, path: &[u32]) -> Option<u32> {
    let mut cur = e;
    let mut depth = 0;
    for &i in path {
        let kids = cur.children();
        let (child, b) = kids.get(i as usize)?;
        depth += b;
        cur = child;
    }
    Some(depth)
}

/// Rebuild `e` with the child at index `i` replaced.
pub fn replace_child(e: &Expr, i: u32, new: Expr) -> Expr {
    use Expr::*;
    let nb = new.boxed();
    match (e, i) {
        (Pi(_, b), 0) => Pi(nb, b.clone()),
        (Pi(a, _), 1) => Pi(a.clone(), nb),
        (Lam(_, b), 0) => Lam(nb, b.clone()),
        (Lam(a, _), 1) => Lam(a.clone(), nb),
        (App(_, b), 0) => App(nb, b.clone()),
        (App(a, _), 1) => App(a.clone(), nb),
        (Sigma(_, b), 0) => Sigma(nb, b.clone()),
        (Sigma(a, _), 1) => Sigma(a.clone(), nb),
        (PairC(_, b), 0) => PairC(nb, b.clone()),
        (PairC(a, _), 1) => PairC(a.clone(), nb),
        (Pr1(_), 0) => Pr1(nb),
        (Pr2(_), 0) => Pr2(nb),
        (SigElim1 { branch, scrut, .. }, 0) => {
            SigElim1 { motive: nb, branch: branch.clone(), scrut: scrut.clone() }
        }
        (SigElim1 { motive, scrut, .. }, 1) => {
            SigElim1 { motive: motive.clone(), branch: nb, scrut: scrut.clone() }
        }
        (SigElim1 { motive, branch, .. }, 2) => {
            SigElim1 { motive: motive.clone(), branch: branch.clone(), scrut: nb }
        }
        (SigElim2 { motive, zone_ann, branch, scrut }, i) => {
            let n = zone_ann.len() as u32;
            let mut motive = motive.clone();
            let mut zone_ann = zone_ann.clone();
            let mut branch = branch.clone();
            let mut scrut = scrut.clone();
            if i == 0 {
                motive = nb;
            } else if i >= 1 && i < 1 + n {
                zone_ann[(i - 1) as usize].1 = *nb;
            } else if i == 1 + n {
                branch = nb;
            } else {
                scrut = nb;
            }
            SigElim2 { motive, zone_ann, branch, scrut }
        }
        (Id(_, m, n), 0) => Id(nb, m.clone(), n.clone()),
        (Id(a, _, n), 1) => Id(a.clone(), nb, n.clone()),
        (Id(a, m, _), 2) => Id(a.clone(), m.clone(), nb),
        (Refl(_), 0) => Refl(nb),
        (IdElim1 { branch, proof, .. }, 0) => {
            IdElim1 { motive: nb, branch: branch.clone(), proof: proof.clone() }
        }
        (IdElim1 { motive, proof, .. }, 1) => {
            IdElim1 { motive: motive.clone(), branch: nb, proof: proof.clone() }
        }
        (IdElim1 { motive, branch, .. }, 2) => {
            IdElim1 { motive: motive.clone(), branch: branch.clone(), proof: nb }
        }
        (IdElim2 { motive, zone_ann, branch, proof }, i) => {
            let n = zone_ann.len() as u32;
            let mut motive = motive.clone();
            let mut zone_ann = zone_ann.clone();
            let mut branch = branch.clone();
            let mut proof = proof.clone();
            if i == 0 {
                motive = nb;
            } else if i >= 1 && i < 1 + n {
                zone_ann[(i - 1) as usize].1 = *nb;
            } else if i == 1 + n {
                branch = nb;
            } else {
                proof = nb;
            }
            IdElim2 { motive, zone_ann, branch, proof }
        }
        (El(tag, _), 0) => El(*tag, nb),
        (Sqcap(_, b), 0) => Sqcap(nb, b.clone()),
        (Sqcap(a, _), 1) => Sqcap(a.clone(), nb),
        (SqLam(_, b), 0) => SqLam(nb, b.clone()),
        (SqLam(a, _), 1) => SqLam(a.clone(), nb),
        (SqApp(_, b), 0) => SqApp(nb, b.clone()),
        (SqApp(a, _), 1) => SqApp(a.clone(), nb),
        (Sqsubset(_, b), 0) => Sqsubset(nb, b.clone()),
        (Sqsubset(a, _), 1) => Sqsubset(a.clone(), nb),
        (SqPair(_, b), 0) => SqPair(nb, b.clone()),
        (SqPair(a, _), 1) => SqPair(a.clone(), nb),
        (SqLet { slot, body, .. }, 0) => SqLet { scrut: nb, slot: *slot, body: body.clone() },
        (SqLet { scrut, slot, .. }, 1) => SqLet { scrut: scrut.clone(), slot: *slot, body: nb },
        (Tensor(_, b), 0) => Tensor(nb, b.clone()),
        (Tensor(a, _), 1) => Tensor(a.clone(), nb),
        (TenPair(_, b), 0) => TenPair(nb, b.clone()),
        (TenPair(a, _), 1) => TenPair(a.clone(), nb),
        (TenLet { slots, body, .. }, 0) => TenLet { scrut: nb, slots: *slots, body: body.clone() },
        (TenLet { scrut, slots, .. }, 1) => {
            TenLet { scrut: scrut.clone(), slots: *slots, body: nb }
        }
        (UnitLet { body, .. }, 0) => UnitLet { scrut: nb, body: body.clone() },
        (UnitLet { scrut, .. }, 1) => UnitLet { scrut: scrut.clone(), body: nb },
        (Lolli(_, b), 0) => Lolli(nb, b.clone()),
        (Lolli(a, _), 1) => Lolli(a.clone(), nb),
        (LinLam { slot, body, .. }, 0) => LinLam { ann: nb, slot: *slot, body: body.clone() },
        (LinLam { ann, slot, .. }, 1) => LinLam { ann: ann.clone(), slot: *slot, body: nb },
        (LinApp(_, b), 0) => LinApp(nb, b.clone()),
        (LinApp(a, _), 1) => LinApp(a.clone(), nb),
        (With(_, b), 0) => With(nb, b.clone()),
        (With(a, _), 1) => With(a.clone(), nb),
        (WithPair(_, b), 0) => WithPair(nb, b.clone()),
        (WithPair(a, _), 1) => WithPair(a.clone(), nb),
        (WithFst(_), 0) => WithFst(nb),
        (WithSnd(_), 0) => WithSnd(nb),
        (Plus(_, b), 0) => Plus(nb, b.clone()),
        (Plus(a, _), 1) => Plus(a.clone(), nb),
        (Inl(_), 0) => Inl(nb),
        (Inr(_), 0) => Inr(nb),
        (PlusCase { left_slot, left, right_slot, right, .. }, 0) => PlusCase {
            scrut: nb,
            left_slot: *left_slot,
            left: left.clone(),
            right_slot: *right_slot,
            right: right.clone(),
        },
        (PlusCase { scrut, left_slot, right_slot, right, .. }, 1) => PlusCase {
            scrut: scrut.clone(),
            left_slot: *left_slot,
            left: nb,
            right_slot: *right_slot,
            right: right.clone(),
        },
        (PlusCase { scrut, left_slot, left, right_slot, .. }, 2) => PlusCase {
            scrut: scrut.clone(),
            left_slot: *left_slot,
            left: left.clone(),
            right_slot: *right_slot,
            right: nb,
        },
        (ZeroElim(_), 0) => ZeroElim(nb),
        (LTy(_), 0) => LTy(nb),
        (LIntro(_), 0) => LIntro(nb),
        (LLet { body, .. }, 0) => LLet { scrut: nb, body: body.clone() },
        (LLet { scrut, .. }, 1) => LLet { scrut: scrut.clone(), body: nb },
        (MTy(_), 0) => MTy(nb),
        (MIntro(_), 0) => MIntro(nb),
        (MElim(_), 0) => MElim(nb),
        (Ua { back, back2, coh1, coh2, .. }, 0) => Ua {
            fwd: nb,
            back: back.clone(),
            back2: back2.clone(),
            coh1: coh1.clone(),
            coh2: coh2.clone(),
        },
        (Ua { fwd, back2, coh1, coh2, .. }, 1) => Ua {
            fwd: fwd.clone(),
            back: nb,
            back2: back2.clone(),
            coh1: coh1.clone(),
            coh2: coh2.clone(),
        },
        (Ua { fwd, back, coh1, coh2, .. }, 2) => Ua {
            fwd: fwd.clone(),
            back: back.clone(),
            back2: nb,
            coh1: coh1.clone(),
            coh2: coh2.clone(),
        },
        (Ua { fwd, back, back2, coh2, .. }, 3) => Ua {
            fwd: fwd.clone(),
            back: back.clone(),
            back2: back2.clone(),
            coh1: nb,
            coh2: coh2.clone(),
        },
        (Ua { fwd, back, back2, coh1, .. }, 4) => Ua {
            fwd: fwd.clone(),
            back: back.clone(),
            back2: back2.clone(),
            coh1: coh1.clone(),
            coh2: nb,
        },
        _ => panic!("replace_child: no child {i} on this node"),
    }
}

pub fn replace_at(e: &Expr, path: &[u32], new: Expr) -> Expr {
    match path.split_first() {
        None => new,
        Some((&i, rest)) => {
            let child = e.children()[i as usize].0;
            replace_child(e, i, replace_at(child, rest, new))
        }
    }
}
