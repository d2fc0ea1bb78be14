use crate::kernel::{Behavior, Default, OtherPart, PhiPart, TermRef};

/// Descriptor text of a default, naming terms with `name`. The session
/// format uses the same grammar with `#id` names.
pub fn kind_text(d: &Default, name: &dyn Fn(TermRef) -> String) -> String {
    match d {
        Default::Zero => "zero".into(),
        Default::Identity => "identity".into(),
        Default::Const(t) => format!("const {}", name(*t)),
        Default::Rule { phi, other } => {
            let p = match phi {
                PhiPart::Affine { scale, offset } => format!("affine {scale} {offset}"),
                PhiPart::Const(t) => format!("phiconst {}", name(*t)),
                PhiPart::Family(k) => format!("family {}", k.name()),
            };
            let o = match other {
                OtherPart::Succ(k) => format!("succ {k}"),
                OtherPart::Const(t) => format!("else {}", name(*t)),
            };
            format!("rule {p} {o}")
        }
        Default::Filter(p) => format!("filter {p}"),
    }
}

/// `kind [k -> v, ...]` with keys in id order.
pub fn behavior_text(b: &Behavior, name: &dyn Fn(TermRef) -> String) -> String {
    let pairs: Vec<String> = b
        .exceptions
        .iter()
        .map(|(&k, &v)| format!("{} -> {}", name(k), name(v)))
        .collect();
    format!("{} [{}]", kind_text(&b.default, name), pairs.join(", "))
}

/// Human reading of a default for `show` tables.
pub fn default_row(d: &Default, name: &dyn Fn(TermRef) -> String) -> String {
    match d {
        Default::Zero => "0".into(),
        Default::Identity => "x".into(),
        Default::Const(t) => name(*t),
        Default::Rule { phi, other } => {
            let p = match phi {
                PhiPart::Affine { scale: 1, offset: 0 } => "phi n -> phi n".to_string(),
                PhiPart::Affine { scale: 1, offset } => format!("phi n -> phi (n+{offset})"),
                PhiPart::Affine { scale, offset: 0 } => format!("phi n -> phi ({scale}n)"),
                PhiPart::Affine { scale, offset } => format!("phi n -> phi ({scale}n+{offset})"),
                PhiPart::Const(t) => format!("phi n -> {}", name(*t)),
                PhiPart::Family(k) => format!("phi n -> {} n", k.name()),
            };
            let o = match other {
                OtherPart::Succ(0) => "x".to_string(),
                OtherPart::Succ(1) => "succ x".to_string(),
                OtherPart::Succ(k) => format!("succ^{k} x"),
                OtherPart::Const(t) => name(*t),
            };
            format!("{p}; otherwise {o}")
        }
        Default::Filter(p) => format!("x if {p}, otherwise 0"),
    }
}
