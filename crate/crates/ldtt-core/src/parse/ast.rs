//! Surface syntax trees, straight out of the parser.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

impl SourceSpan {
    pub fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
            line: self.line,
            col: self.col,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SExpr {
    pub node: SNode,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinderKind {
    Pi,
    Sg,
    Cap,
    Sub,
    Lam,
    Clam,
    Llam,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixOp {
    Lt,
    Mt,
    El,
    Lift,
    Sig,
    Unsig,
    Pr1,
    Pr2,
    Fst,
    Snd,
    Inl,
    Inr,
    Refl,
    Abort,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SNode {
    Var(String),
    UnivU,
    UnivL,
    UnitTy,
    TopTy,
    ZeroTy,
    UnitTm,
    TopTm,
    Arrow(Box<SExpr>, Box<SExpr>),
    Lolli(Box<SExpr>, Box<SExpr>),
    Tensor(Box<SExpr>, Box<SExpr>),
    WithTy(Box<SExpr>, Box<SExpr>),
    PlusTy(Box<SExpr>, Box<SExpr>),
    Binder { kind: BinderKind, names: Vec<String>, ann: Box<SExpr>, body: Box<SExpr> },
    App(Box<SExpr>, Box<SExpr>),
    Pair(Box<SExpr>, Box<SExpr>),
    WithPair(Box<SExpr>, Box<SExpr>),
    Prefix(PrefixOp, Box<SExpr>),
    IdTy(Box<SExpr>, Box<SExpr>, Box<SExpr>),
    UaTm(Vec<SExpr>),
    LetL { name: String, scrut: Box<SExpr>, body: Box<SExpr> },
    LetTen { x: String, y: String, scrut: Box<SExpr>, body: Box<SExpr> },
    LetUnit { scrut: Box<SExpr>, body: Box<SExpr> },
    LetSub { x: String, y: String, scrut: Box<SExpr>, body: Box<SExpr> },
    Case {
        scrut: Box<SExpr>,
        left_name: String,
        left: Box<SExpr>,
        right_name: String,
        right: Box<SExpr>,
    },
    Split {
        linear: bool,
        scrut: Box<SExpr>,
        motive_name: String,
        motive: Box<SExpr>,
        keep: Vec<(String, SExpr)>,
        x: String,
        y: String,
        branch: Box<SExpr>,
    },
    JElim {
        linear: bool,
        proof: Box<SExpr>,
        xyp: (String, String, String),
        motive: Box<SExpr>,
        keep: Vec<(String, SExpr)>,
        z: String,
        branch: Box<SExpr>,
    },
}

/// One parameter group in a telescope; the linear flag marks the part
/// after the semicolon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeleBind {
    pub names: Vec<String>,
    pub ty: SExpr,
    pub linear: bool,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclKind {
    Def,
    Check,
    EqCheck,
    Flag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDecl {
    pub kind: DeclKind,
    pub name: String,
    pub params: Vec<TeleBind>,
    pub ty: Option<SExpr>,
    pub body: Option<SExpr>,
    pub rhs: Option<SExpr>,
    pub span: SourceSpan,
}
