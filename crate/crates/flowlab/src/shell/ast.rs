use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Zero,
    One,
    Phi(u64),
    Psi,
    Sigma,
    Lambda,
    Omega,
    Id(u32),
    Name(String),
    Compose(Box<Expr>, Box<Expr>),
    Succ(Box<Expr>),
    Power(Box<Expr>),
    Choice(Box<Expr>),
    Fst(Box<Expr>),
    Snd(Box<Expr>),
    Restrict(Box<Expr>, Box<Pred>),
    Union(Vec<Expr>),
    Inter(Vec<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Arrow(Vec<(Expr, Expr)>),
    Eval(Box<Expr>, Box<Expr>),
    Plus(Box<Expr>, Box<Expr>),
    Times(Box<Expr>, Box<Expr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Operand {
    Var,
    Expr(Expr),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CmpOp {
    Eq,
    Neq,
    In,
    Sub,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Pred {
    True,
    False,
    Cmp(CmpOp, Operand, Operand),
    IsPair(Operand),
    IsZf(Operand),
    Not(Box<Pred>),
    And(Box<Pred>, Box<Pred>),
    Or(Box<Pred>, Box<Pred>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatFixture {
    Worked,
    Set,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Command {
    Let(String, Expr),
    Query(Expr),
    CheckZf { rank: u32, seeds: u64 },
    CheckCat(CatFixture),
    Diagram(Expr, String),
    Save(String),
    Load(String),
    Show(Expr),
    Classify(Expr),
}

/// Words that cannot be bound as names.
pub const KEYWORDS: &[&str] = &[
    "let", "show", "classify", "check", "diagram", "to", "save", "load", "where", "and", "or", "not", "in",
    "sub", "true", "false", "zero", "one", "phi", "psi", "sigma", "lambda", "omega", "succ", "power",
    "choice", "fst", "snd", "union", "inter", "pair", "prod", "arrow", "eval", "plus", "times", "x",
];

// Binding strength for printing: 0 where, 1 compose, 2 prefix, 3 atom.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Restrict(..) => 0,
        Expr::Compose(..) => 1,
        Expr::Succ(_) | Expr::Power(_) | Expr::Choice(_) | Expr::Fst(_) | Expr::Snd(_) => 2,
        _ => 3,
    }
}

struct At<'a>(&'a Expr, u8);

impl fmt::Display for At<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if level(self.0) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn list(f: &mut fmt::Formatter<'_>, kw: &str, xs: &[Expr]) -> fmt::Result {
    write!(f, "{kw} {{")?;
    for (i, x) in xs.iter().enumerate() {
        write!(f, "{}{x}", if i == 0 { " " } else { ", " })?;
    }
    write!(f, "{}}}", if xs.is_empty() { "" } else { " " })
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Zero => write!(f, "0"),
            Expr::One => write!(f, "1"),
            Expr::Phi(n) => write!(f, "phi {n}"),
            Expr::Psi => write!(f, "psi"),
            Expr::Sigma => write!(f, "sigma"),
            Expr::Lambda => write!(f, "lambda"),
            Expr::Omega => write!(f, "omega"),
            Expr::Id(n) => write!(f, "#{n}"),
            Expr::Name(s) => write!(f, "{s}"),
            Expr::Compose(a, b) => write!(f, "{} . {}", At(a, 1), At(b, 2)),
            Expr::Succ(a) => write!(f, "succ {}", At(a, 2)),
            Expr::Power(a) => write!(f, "power {}", At(a, 2)),
            Expr::Choice(a) => write!(f, "choice {}", At(a, 2)),
            Expr::Fst(a) => write!(f, "fst {}", At(a, 2)),
            Expr::Snd(a) => write!(f, "snd {}", At(a, 2)),
            Expr::Restrict(a, p) => write!(f, "{} where {p}", At(a, 1)),
            Expr::Union(xs) => list(f, "union", xs),
            Expr::Inter(xs) => list(f, "inter", xs),
            Expr::Pair(a, b) => write!(f, "pair({a}, {b})"),
            Expr::Prod(a, b) => write!(f, "prod({a}, {b})"),
            Expr::Eval(a, b) => write!(f, "eval({a}, {b})"),
            Expr::Plus(a, b) => write!(f, "plus({a}, {b})"),
            Expr::Times(a, b) => write!(f, "times({a}, {b})"),
            Expr::Arrow(xs) => {
                write!(f, "arrow {{")?;
                for (i, (a, b)) in xs.iter().enumerate() {
                    write!(f, "{}{a} -> {b}", if i == 0 { " " } else { ", " })?;
                }
                write!(f, "{}}}", if xs.is_empty() { "" } else { " " })
            }
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Var => write!(f, "x"),
            Operand::Expr(e) => write!(f, "{}", At(e, 1)),
        }
    }
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Eq => "=",
            CmpOp::Neq => "!=",
            CmpOp::In => "in",
            CmpOp::Sub => "sub",
        })
    }
}

// 0 or, 1 and, 2 not / atoms
fn plevel(p: &Pred) -> u8 {
    match p {
        Pred::Or(..) => 0,
        Pred::And(..) => 1,
        _ => 2,
    }
}

struct PAt<'a>(&'a Pred, u8);

impl fmt::Display for PAt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if plevel(self.0) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pred::True => write!(f, "true"),
            Pred::False => write!(f, "false"),
            Pred::Cmp(op, a, b) => write!(f, "{a} {op} {b}"),
            Pred::IsPair(a) => write!(f, "pair? {a}"),
            Pred::IsZf(a) => write!(f, "zf? {a}"),
            Pred::Not(p) => write!(f, "not {}", PAt(p, 2)),
            Pred::And(a, b) => write!(f, "{} and {}", PAt(a, 1), PAt(b, 2)),
            Pred::Or(a, b) => write!(f, "{} or {}", PAt(a, 0), PAt(b, 1)),
        }
    }
}

fn quoted(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    write!(f, "\"{s}\"")
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Let(n, e) => write!(f, "let {n} = {e}"),
            Command::Query(e) => write!(f, "{e}"),
            Command::CheckZf { rank, seeds } => write!(f, "check zf rank {rank} seeds {seeds}"),
            Command::CheckCat(CatFixture::Worked) => write!(f, "check cat worked"),
            Command::CheckCat(CatFixture::Set) => write!(f, "check cat set"),
            Command::Diagram(e, p) => {
                write!(f, "diagram {e} to ")?;
                quoted(f, p)
            }
            Command::Save(p) => {
                write!(f, "save ")?;
                quoted(f, p)
            }
            Command::Load(p) => {
                write!(f, "load ")?;
                quoted(f, p)
            }
            Command::Show(e) => write!(f, "show {e}"),
            Command::Classify(e) => write!(f, "classify {e}"),
        }
    }
}
