use std::collections::BTreeSet;
use std::fmt;

/// A first-order formula over `not`, `or`, `exists`, `=` and relation
/// symbols. Terms are names: a variable when bound or supplied by the
/// environment, otherwise a constant of the structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Eq(String, String),
    Rel(String, Vec<String>),
}

impl Formula {
    pub fn not(p: Formula) -> Formula {
        Formula::Not(Box::new(p))
    }

    pub fn or(p: Formula, q: Formula) -> Formula {
        Formula::Or(Box::new(p), Box::new(q))
    }

    pub fn exists(v: impl Into<String>, p: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(p))
    }

    pub fn eq(a: impl Into<String>, b: impl Into<String>) -> Formula {
        Formula::Eq(a.into(), b.into())
    }

    pub fn rel(name: impl Into<String>, args: &[&str]) -> Formula {
        Formula::Rel(name.into(), args.iter().map(|a| a.to_string()).collect())
    }

    /// `p and q` := `not ((not p) or (not q))`.
    pub fn and(p: Formula, q: Formula) -> Formula {
        Formula::not(Formula::or(Formula::not(p), Formula::not(q)))
    }

    /// `p implies q` := `(not p) or q`.
    pub fn implies(p: Formula, q: Formula) -> Formula {
        Formula::or(Formula::not(p), q)
    }

    /// `forall v. p` := `not exists v. not p`.
    pub fn forall(v: impl Into<String>, p: Formula) -> Formula {
        Formula::not(Formula::exists(v, Formula::not(p)))
    }

    /// Names occurring free. Names that are constants of a structure show
    /// up here too; the evaluator resolves them.
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut add = |t: &String, bound: &Vec<&str>| {
            if !bound.contains(&t.as_str()) {
                out.insert(t.clone());
            }
        };
        match self {
            Formula::Not(p) => p.collect_free(bound, out),
            Formula::Or(p, q) => {
                p.collect_free(bound, out);
                q.collect_free(bound, out);
            }
            Formula::Exists(v, p) => {
                bound.push(v);
                p.collect_free(bound, out);
                bound.pop();
            }
            Formula::Eq(a, b) => {
                add(a, bound);
                add(b, bound);
            }
            Formula::Rel(_, args) => {
                for a in args {
                    add(a, bound);
                }
            }
        }
    }

    /// Height of the syntax tree; atoms have height 1.
    pub fn height(&self) -> usize {
        match self {
            Formula::Not(p) | Formula::Exists(_, p) => 1 + p.height(),
            Formula::Or(p, q) => 1 + p.height().max(q.height()),
            Formula::Eq(..) | Formula::Rel(..) => 1,
        }
    }

    /// Text ending in a quantifier body would swallow a following `or`.
    fn is_open_ended(&self) -> bool {
        match self {
            Formula::Exists(..) => true,
            Formula::Not(p) => p.is_open_ended(),
            _ => false,
        }
    }
}

/// Prints in the concrete grammar accepted by
/// [`parse_formula`](super::parse_formula); the output parses back to the
/// same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Not(p) => write!(f, "not {p}"),
            Formula::Or(p, q) => {
                if p.is_open_ended() {
                    write!(f, "(({p}) or {q})")
                } else {
                    write!(f, "({p} or {q})")
                }
            }
            Formula::Exists(v, p) => write!(f, "exists {v}. {p}"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Rel(r, args) => write!(f, "{r}({})", args.join(", ")),
        }
    }
}
