//! The core term language.
//!
//! One unified expression type covers cartesian and linear types and terms;
//! sorts are recovered syntactically by [`crate::syntax::sort_of`]. Cartesian
//! binders use de Bruijn indices. Linear binders use stable slot ids, so
//! exchange in the linear zone never rewrites terms.

/// Identifier of a linear variable, unique within a checking unit.
pub type SlotId = u32;

/// Which universe a code lives in; fixed at resolution time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnivTag {
    Cart,
    Lin,
}

/// Syntactic sort of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    CartType,
    LinType,
    CartTerm,
    LinTerm,
}

impl Sort {
    pub fn is_type(self) -> bool {
        matches!(self, Sort::CartType | Sort::LinType)
    }

    pub fn is_term(self) -> bool {
        !self.is_type()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    // variables and signature references
    CartVar(u32),
    LinVar(SlotId),
    Const(u32),

    // cartesian dependent products
    Pi(Box<Expr>, Box<Expr>),
    Lam(Box<Expr>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),

    // cartesian dependent sums, with projections and both eliminators
    Sigma(Box<Expr>, Box<Expr>),
    PairC(Box<Expr>, Box<Expr>),
    Pr1(Box<Expr>),
    Pr2(Box<Expr>),
    SigElim1 {
        motive: Box<Expr>,
        branch: Box<Expr>,
        scrut: Box<Expr>,
    },
    SigElim2 {
        motive: Box<Expr>,
        zone_ann: Vec<(SlotId, Expr)>,
        branch: Box<Expr>,
        scrut: Box<Expr>,
    },

    // identity types
    Id(Box<Expr>, Box<Expr>, Box<Expr>),
    Refl(Box<Expr>),
    IdElim1 {
        motive: Box<Expr>,
        branch: Box<Expr>,
        proof: Box<Expr>,
    },
    IdElim2 {
        motive: Box<Expr>,
        zone_ann: Vec<(SlotId, Expr)>,
        branch: Box<Expr>,
        proof: Box<Expr>,
    },

    // universes of cartesian and linear codes
    UnivU,
    UnivL,
    El(UnivTag, Box<Expr>),

    // linear dependent product over a cartesian index
    Sqcap(Box<Expr>, Box<Expr>),
    SqLam(Box<Expr>, Box<Expr>),
    SqApp(Box<Expr>, Box<Expr>),

    // linear dependent sum over a cartesian index
    Sqsubset(Box<Expr>, Box<Expr>),
    SqPair(Box<Expr>, Box<Expr>),
    SqLet {
        scrut: Box<Expr>,
        slot: SlotId,
        body: Box<Expr>,
    },

    // multiplicatives
    Tensor(Box<Expr>, Box<Expr>),
    TenPair(Box<Expr>, Box<Expr>),
    TenLet {
        scrut: Box<Expr>,
        slots: (SlotId, SlotId),
        body: Box<Expr>,
    },
    UnitI,
    UnitIntro,
    UnitLet {
        scrut: Box<Expr>,
        body: Box<Expr>,
    },
    Lolli(Box<Expr>, Box<Expr>),
    LinLam {
        ann: Box<Expr>,
        slot: SlotId,
        body: Box<Expr>,
    },
    LinApp(Box<Expr>, Box<Expr>),

    // additives
    With(Box<Expr>, Box<Expr>),
    WithPair(Box<Expr>, Box<Expr>),
    WithFst(Box<Expr>),
    WithSnd(Box<Expr>),
    Plus(Box<Expr>, Box<Expr>),
    Inl(Box<Expr>),
    Inr(Box<Expr>),
    PlusCase {
        scrut: Box<Expr>,
        left_slot: SlotId,
        left: Box<Expr>,
        right_slot: SlotId,
        right: Box<Expr>,
    },
    ZeroTy,
    ZeroElim(Box<Expr>),
    TopTy,
    TopIntro,

    // the L modality: cartesian types to linear types
    LTy(Box<Expr>),
    LIntro(Box<Expr>),
    LLet {
        scrut: Box<Expr>,
        body: Box<Expr>,
    },

    // the M modality: linear types to cartesian types
    MTy(Box<Expr>),
    MIntro(Box<Expr>),
    MElim(Box<Expr>),

    // linear univalence introduction, available behind the ua flag
    Ua {
        fwd: Box<Expr>,
        back: Box<Expr>,
        back2: Box<Expr>,
        coh1: Box<Expr>,
        coh2: Box<Expr>,
    },
}

impl Expr {
    pub fn boxed(self) -> Box<Expr> {
        Box::new(self)
    }

    /// Largest slot id mentioned anywhere (bound or free), for fresh supply.
    pub fn max_slot(&self) -> Option<SlotId> {
        let mut best = None;
        self.visit(&mut |e| {
            let s = match e {
                Expr::LinVar(s) => Some(*s),
                Expr::LinLam { slot, .. } | Expr::SqLet { slot, .. } => Some(*slot),
                Expr::TenLet { slots, .. } => Some(slots.0.max(slots.1)),
                Expr::PlusCase { left_slot, right_slot, .. } => Some((*left_slot).max(*right_slot)),
                Expr::SigElim2 { zone_ann, .. } | Expr::IdElim2 { zone_ann, .. } => {
                    zone_ann.iter().map(|(s, _)| *s).max()
                }
                _ => None,
            };
            if let Some(s) = s {
                best = Some(best.map_or(s, |b: SlotId| b.max(s)));
            }
        });
        best
    }

    /// Preorder visit of every node.
    pub fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        for (child, _) in self.children() {
            child.visit(f);
        }
    }

    /// Children paired with the number of cartesian binders they sit under.
    pub fn children(&self) -> Vec<(&Expr, u32)> {
        use Expr::*;
        match self {
            CartVar(_) | LinVar(_) | Const(_) | UnivU | UnivL | UnitI | UnitIntro | ZeroTy
            | TopTy | TopIntro => vec![],
            Pi(a, b) | Sigma(a, b) | Sqcap(a, b) | Sqsubset(a, b) | Lam(a, b) | SqLam(a, b) => {
                vec![(a.as_ref(), 0), (b.as_ref(), 1)]
            }
            App(a, b) | PairC(a, b) | SqApp(a, b) | SqPair(a, b) | TenPair(a, b)
            | Tensor(a, b) | Lolli(a, b) | With(a, b) | Plus(a, b) | WithPair(a, b)
            | LinApp(a, b) => vec![(a.as_ref(), 0), (b.as_ref(), 0)],
            Pr1(a) | Pr2(a) | Refl(a) | El(_, a) | WithFst(a) | WithSnd(a) | Inl(a) | Inr(a)
            | ZeroElim(a) | LTy(a) | LIntro(a) | MTy(a) | MIntro(a) | MElim(a) => {
                vec![(a.as_ref(), 0)]
            }
            Id(a, m, n) => vec![(a.as_ref(), 0), (m.as_ref(), 0), (n.as_ref(), 0)],
            SigElim1 { motive, branch, scrut } => {
                vec![(motive.as_ref(), 1), (branch.as_ref(), 2), (scrut.as_ref(), 0)]
            }
            SigElim2 { motive, zone_ann, branch, scrut } => {
                let mut v = vec![(motive.as_ref(), 1)];
                v.extend(zone_ann.iter().map(|(_, t)| (t, 2)));
                v.push((branch.as_ref(), 2));
                v.push((scrut.as_ref(), 0));
                v
            }
            IdElim1 { motive, branch, proof } => {
                vec![(motive.as_ref(), 3), (branch.as_ref(), 1), (proof.as_ref(), 0)]
            }
            IdElim2 { motive, zone_ann, branch, proof } => {
                let mut v = vec![(motive.as_ref(), 3)];
                v.extend(zone_ann.iter().map(|(_, t)| (t, 3)));
                v.push((branch.as_ref(), 1));
                v.push((proof.as_ref(), 0));
                v
            }
            SqLet { scrut, body, .. } => vec![(scrut.as_ref(), 0), (body.as_ref(), 1)],
            TenLet { scrut, body, .. } => vec![(scrut.as_ref(), 0), (body.as_ref(), 0)],
            UnitLet { scrut, body } => vec![(scrut.as_ref(), 0), (body.as_ref(), 0)],
            LinLam { ann, body, .. } => vec![(ann.as_ref(), 0), (body.as_ref(), 0)],
            PlusCase { scrut, left, right, .. } => {
                vec![(scrut.as_ref(), 0), (left.as_ref(), 0), (right.as_ref(), 0)]
            }
            LLet { scrut, body } => vec![(scrut.as_ref(), 0), (body.as_ref(), 1)],
            Ua { fwd, back, back2, coh1, coh2 } => vec![
                (fwd.as_ref(), 0),
                (back.as_ref(), 0),
                (back2.as_ref(), 0),
                (coh1.as_ref(), 0),
                (coh2.as_ref(), 0),
            ],
        }
    }
}

// Convenience constructors used pervasively by the kernel, the corpus and tests.
pub fn var(i: u32) -> Expr {
    Expr::CartVar(i)
}
pub fn lvar(s: SlotId) -> Expr {
    Expr::LinVar(s)
}
pub fn cnst(i: u32) -> Expr {
    Expr::Const(i)
}
pub fn pi(a: Expr, b: Expr) -> Expr {
    Expr::Pi(a.boxed(), b.boxed())
}
pub fn lam(a: Expr, b: Expr) -> Expr {
    Expr::Lam(a.boxed(), b.boxed())
}
pub fn app(f: Expr, a: Expr) -> Expr {
    Expr::App(f.boxed(), a.boxed())
}
pub fn sigma(a: Expr, b: Expr) -> Expr {
    Expr::Sigma(a.boxed(), b.boxed())
}
pub fn pairc(a: Expr, b: Expr) -> Expr {
    Expr::PairC(a.boxed(), b.boxed())
}
pub fn pr1(a: Expr) -> Expr {
    Expr::Pr1(a.boxed())
}
pub fn pr2(a: Expr) -> Expr {
    Expr::Pr2(a.boxed())
}
pub fn id_ty(a: Expr, m: Expr, n: Expr) -> Expr {
    Expr::Id(a.boxed(), m.boxed(), n.boxed())
}
pub fn refl(m: Expr) -> Expr {
    Expr::Refl(m.boxed())
}
pub fn el_u(a: Expr) -> Expr {
    Expr::El(UnivTag::Cart, a.boxed())
}
pub fn el_l(a: Expr) -> Expr {
    Expr::El(UnivTag::Lin, a.boxed())
}
pub fn sqcap(a: Expr, b: Expr) -> Expr {
    Expr::Sqcap(a.boxed(), b.boxed())
}
pub fn sqlam(a: Expr, b: Expr) -> Expr {
    Expr::SqLam(a.boxed(), b.boxed())
}
pub fn sqapp(f: Expr, a: Expr) -> Expr {
    Expr::SqApp(f.boxed(), a.boxed())
}
pub fn sqsubset(a: Expr, b: Expr) -> Expr {
    Expr::Sqsubset(a.boxed(), b.boxed())
}
pub fn sqpair(s: Expr, b: Expr) -> Expr {
    Expr::SqPair(s.boxed(), b.boxed())
}
pub fn sqlet(scrut: Expr, slot: SlotId, body: Expr) -> Expr {
    Expr::SqLet { scrut: scrut.boxed(), slot, body: body.boxed() }
}
pub fn tensor(a: Expr, b: Expr) -> Expr {
    Expr::Tensor(a.boxed(), b.boxed())
}
pub fn tenpair(a: Expr, b: Expr) -> Expr {
    Expr::TenPair(a.boxed(), b.boxed())
}
pub fn tenlet(scrut: Expr, x: SlotId, y: SlotId, body: Expr) -> Expr {
    Expr::TenLet { scrut: scrut.boxed(), slots: (x, y), body: body.boxed() }
}
pub fn unitlet(scrut: Expr, body: Expr) -> Expr {
    Expr::UnitLet { scrut: scrut.boxed(), body: body.boxed() }
}
pub fn lolli(a: Expr, b: Expr) -> Expr {
    Expr::Lolli(a.boxed(), b.boxed())
}
pub fn linlam(ann: Expr, slot: SlotId, body: Expr) -> Expr {
    Expr::LinLam { ann: ann.boxed(), slot, body: body.boxed() }
}
pub fn linapp(f: Expr, a: Expr) -> Expr {
    Expr::LinApp(f.boxed(), a.boxed())
}
pub fn with(a: Expr, b: Expr) -> Expr {
    Expr::With(a.boxed(), b.boxed())
}
pub fn withpair(a: Expr, b: Expr) -> Expr {
    Expr::WithPair(a.boxed(), b.boxed())
}
pub fn withfst(a: Expr) -> Expr {
    Expr::WithFst(a.boxed())
}
pub fn withsnd(a: Expr) -> Expr {
    Expr::WithSnd(a.boxed())
}
pub fn plus(a: Expr, b: Expr) -> Expr {
    Expr::Plus(a.boxed(), b.boxed())
}
pub fn inl(a: Expr) -> Expr {
    Expr::Inl(a.boxed())
}
pub fn inr(a: Expr) -> Expr {
    Expr::Inr(a.boxed())
}
pub fn pluscase(scrut: Expr, xs: SlotId, l: Expr, ys: SlotId, r: Expr) -> Expr {
    Expr::PlusCase {
        scrut: scrut.boxed(),
        left_slot: xs,
        left: l.boxed(),
        right_slot: ys,
        right: r.boxed(),
    }
}
pub fn zeroelim(a: Expr) -> Expr {
    Expr::ZeroElim(a.boxed())
}
pub fn l_ty(a: Expr) -> Expr {
    Expr::LTy(a.boxed())
}
pub fn lift(a: Expr) -> Expr {
    Expr::LIntro(a.boxed())
}
pub fn llet(scrut: Expr, body: Expr) -> Expr {
    Expr::LLet { scrut: scrut.boxed(), body: body.boxed() }
}
pub fn m_ty(a: Expr) -> Expr {
    Expr::MTy(a.boxed())
}
pub fn mintro(a: Expr) -> Expr {
    Expr::MIntro(a.boxed())
}
pub fn melim(a: Expr) -> Expr {
    Expr::MElim(a.boxed())
}
pub fn sigelim1(motive: Expr, branch: Expr, scrut: Expr) -> Expr {
    Expr::SigElim1 { motive: motive.boxed(), branch: branch.boxed(), scrut: scrut.boxed() }
}
pub fn sigelim2(motive: Expr, zone_ann: Vec<(SlotId, Expr)>, branch: Expr, scrut: Expr) -> Expr {
    Expr::SigElim2 {
        motive: motive.boxed(),
        zone_ann,
        branch: branch.boxed(),
        scrut: scrut.boxed(),
    }
}
pub fn idelim1(motive: Expr, branch: Expr, proof: Expr) -> Expr {
    Expr::IdElim1 { motive: motive.boxed(), branch: branch.boxed(), proof: proof.boxed() }
}
pub fn idelim2(motive: Expr, zone_ann: Vec<(SlotId, Expr)>, branch: Expr, proof: Expr) -> Expr {
    Expr::IdElim2 {
        motive: motive.boxed(),
        zone_ann,
        branch: branch.boxed(),
        proof: proof.boxed(),
    }
}
pub fn ua(fwd: Expr, back: Expr, back2: Expr, coh1: Expr, coh2: Expr) -> Expr {
    Expr::Ua {
        fwd: fwd.boxed(),
        back: back.boxed(),
        back2: back2.boxed(),
        coh1: coh1.boxed(),
        coh2: coh2.boxed(),
    }
}
