use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Formula, LosError};

/// A universe element as written in JSON: a string or an integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Int(i64),
    Str(String),
}

impl fmt::Display for ElementDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementDoc::Int(i) => write!(f, "{i}"),
            ElementDoc::Str(s) => f.write_str(s),
        }
    }
}

/// JSON shape of a structure:
/// `{"universe": [0, 1, 2], "relations": {"L": [[0, 1], [1, 2]]}, "constants": {"zero": 0}}`.
/// `arities` declares the arity of relations whose tuple list is empty.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StructureDoc {
    pub universe: Vec<ElementDoc>,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<Vec<ElementDoc>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, ElementDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arities: BTreeMap<String, usize>,
}

/// Relation symbols with arities, and constant symbols.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub relations: BTreeMap<String, usize>,
    pub constants: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Relation {
    arity: usize,
    tuples: HashSet<Vec<usize>>,
}

/// A finite relational structure. Elements are `0..size`, ordered by index;
/// `labels` keeps their printed names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    labels: Vec<String>,
    relations: BTreeMap<String, Relation>,
    constants: BTreeMap<String, usize>,
}

impl Structure {
    pub fn new(size: usize) -> Result<Self, LosError> {
        if size == 0 {
            return Err(LosError::Structure("the universe must be nonempty".into()));
        }
        Ok(Structure { labels: (0..size).map(|i| i.to_string()).collect(), relations: BTreeMap::new(), constants: BTreeMap::new() })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self, LosError> {
        let mut st = Structure::new(labels.len())?;
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(LosError::Structure("universe elements must be distinct".into()));
        }
        st.labels = labels;
        Ok(st)
    }

    pub fn add_relation(&mut self, name: &str, arity: usize, tuples: Vec<Vec<usize>>) -> Result<(), LosError> {
        if arity == 0 {
            return Err(LosError::Structure(format!("relation `{name}` must have arity at least 1")));
        }
        if self.relations.contains_key(name) || self.constants.contains_key(name) {
            return Err(LosError::Structure(format!("symbol `{name}` is defined twice")));
        }
        for t in &tuples {
            if t.len() != arity {
                return Err(LosError::Structure(format!("relation `{name}` has arity {arity} but contains {t:?}")));
            }
            if let Some(&x) = t.iter().find(|&&x| x >= self.size()) {
                return Err(LosError::Structure(format!("relation `{name}` mentions element {x} outside the universe")));
            }
        }
        self.relations.insert(name.to_string(), Relation { arity, tuples: tuples.into_iter().collect() });
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str, element: usize) -> Result<(), LosError> {
        if element >= self.size() {
            return Err(LosError::Structure(format!("constant `{name}` names element {element} outside the universe")));
        }
        if self.relations.contains_key(name) || self.constants.insert(name.to_string(), element).is_some() {
            return Err(LosError::Structure(format!("symbol `{name}` is defined twice")));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn signature(&self) -> Signature {
        Signature {
            relations: self.relations.iter().map(|(k, r)| (k.clone(), r.arity)).collect(),
            constants: self.constants.keys().cloned().collect(),
        }
    }

    pub fn holds(&self, relation: &str, args: &[usize]) -> Result<bool, LosError> {
        let r = self.relations.get(relation).ok_or_else(|| LosError::UnknownRelation(relation.to_string()))?;
        if r.arity != args.len() {
            return Err(LosError::Arity { relation: relation.to_string(), expected: r.arity, found: args.len() });
        }
        Ok(r.tuples.contains(args))
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.get(name).copied()
    }

    pub(crate) fn relation_tuples(&self, name: &str) -> Vec<Vec<usize>> {
        let mut t: Vec<Vec<usize>> = self.relations[name].tuples.iter().cloned().collect();
        t.sort();
        t
    }

    pub fn from_doc(doc: &StructureDoc) -> Result<Self, LosError> {
        let labels: Vec<String> = doc.universe.iter().map(ToString::to_string).collect();
        let mut st = Structure::with_labels(labels)?;
        let index = |e: &ElementDoc| {
            doc.universe
                .iter()
                .position(|u| u == e)
                .ok_or_else(|| LosError::Structure(format!("element `{e}` is not in the universe")))
        };
        for (name, tuples) in &doc.relations {
            let arity = match (tuples.first(), doc.arities.get(name)) {
                (Some(t), _) => t.len(),
                (None, Some(&a)) => a,
                (None, None) => {
                    return Err(LosError::Structure(format!(
                        "relation `{name}` is empty; declare its arity under `arities`"
                    )))
                }
            };
            let tuples = tuples
                .iter()
                .map(|t| t.iter().map(index).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            st.add_relation(name, arity, tuples)?;
        }
        for (name, e) in &doc.constants {
            st.add_constant(name, index(e)?)?;
        }
        Ok(st)
    }

    pub fn from_json(text: &str) -> Result<Self, LosError> {
        let doc: StructureDoc = serde_json::from_str(text).map_err(|e| LosError::Format(e.to_string()))?;
        Structure::from_doc(&doc)
    }

    pub fn to_doc(&self) -> StructureDoc {
        let el = |x: usize| ElementDoc::Str(self.labels[x].clone());
        StructureDoc {
            universe: (0..self.size()).map(el).collect(),
            relations: self
                .relations
                .keys()
                .map(|k| (k.clone(), self.relation_tuples(k).into_iter().map(|t| t.into_iter().map(el).collect()).collect()))
                .collect(),
            constants: self.constants.iter().map(|(k, &v)| (k.clone(), el(v))).collect(),
            arities: self.relations.iter().filter(|(_, r)| r.tuples.is_empty()).map(|(k, r)| (k.clone(), r.arity)).collect(),
        }
    }
}

/// Variable assignment; later bindings shadow earlier ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Env {
    bindings: Vec<(String, usize)>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn bind(&mut self, var: impl Into<String>, element: usize) -> &mut Self {
        self.bindings.push((var.into(), element));
        self
    }

    pub fn with(mut self, var: impl Into<String>, element: usize) -> Self {
        self.bind(var, element);
        self
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.bindings.iter().rev().find(|(v, _)| v == var).map(|&(_, e)| e)
    }

    fn push(&mut self, var: &str, element: usize) {
        self.bindings.push((var.to_string(), element));
    }

    fn pop(&mut self) {
        self.bindings.pop();
    }
}

pub(crate) fn resolve(st: &Structure, env: &Env, name: &str) -> Result<usize, LosError> {
    env.get(name)
        .or_else(|| st.constant(name))
        .ok_or_else(|| LosError::UnboundVariable(name.to_string()))
}

/// Tarskian truth of `phi` in `st` under `env`.
pub fn eval(st: &Structure, phi: &Formula, env: &Env) -> Result<bool, LosError> {
    let mut env = env.clone();
    eval_in(st, phi, &mut env)
}

fn eval_in(st: &Structure, phi: &Formula, env: &mut Env) -> Result<bool, LosError> {
    match phi {
        Formula::Not(p) => Ok(!eval_in(st, p, env)?),
        Formula::Or(p, q) => {
            // both sides are evaluated so that errors do not depend on values
            let a = eval_in(st, p, env)?;
            let b = eval_in(st, q, env)?;
            Ok(a || b)
        }
        Formula::Exists(v, p) => {
            let mut found = false;
            for x in 0..st.size() {
                env.push(v, x);
                let r = eval_in(st, p, env);
                env.pop();
                if r? {
                    found = true;
                }
            }
            Ok(found)
        }
        Formula::Eq(a, b) => Ok(resolve(st, env, a)? == resolve(st, env, b)?),
        Formula::Rel(r, args) => {
            let vals = args.iter().map(|a| resolve(st, env, a)).collect::<Result<Vec<_>, _>>()?;
            st.holds(r, &vals)
        }
    }
}
