use std::collections::BTreeMap;

use serde::Serialize;

use super::{eval, Env, Formula, LosError, Structure};
use crate::filters::{FiniteUltrafilter, MAX_FILTER_GROUND};

/// Largest product `∏ |X_i|` an ultraproduct is built from.
pub const MAX_PRODUCT: usize = 1 << 14;

/// Per-variable families `x = (x_i)_{i ∈ I}`: `choices[v][i]` is an element
/// of the `i`-th structure.
pub type Choices = BTreeMap<String, Vec<usize>>;

fn check_family(family: &[Structure]) -> Result<(), LosError> {
    if family.is_empty() || family.len() > MAX_FILTER_GROUND {
        return Err(LosError::Family(format!(
            "index sets must have between 1 and {MAX_FILTER_GROUND} members, got {}",
            family.len()
        )));
    }
    let sig = family[0].signature();
    if let Some(i) = family.iter().position(|st| st.signature() != sig) {
        return Err(LosError::Family(format!("structure {i} has a different signature from structure 0")));
    }
    Ok(())
}

fn check_choices(family: &[Structure], choices: &Choices) -> Result<(), LosError> {
    for (v, xs) in choices {
        if xs.len() != family.len() {
            return Err(LosError::Family(format!(
                "choice for `{v}` has {} entries for {} indices",
                xs.len(),
                family.len()
            )));
        }
        if let Some(i) = (0..xs.len()).find(|&i| xs[i] >= family[i].size()) {
            return Err(LosError::Family(format!("choice for `{v}` leaves the universe at index {i}")));
        }
    }
    Ok(())
}

fn check_ultrafilter(family: &[Structure], u: &FiniteUltrafilter) -> Result<(), LosError> {
    if u.ground() != family.len() {
        return Err(LosError::Family(format!(
            "ultrafilter lives on {} indices but the family has {}",
            u.ground(),
            family.len()
        )));
    }
    Ok(())
}

fn env_at(choices: &Choices, i: usize) -> Env {
    let mut env = Env::new();
    for (v, xs) in choices {
        env.bind(v.clone(), xs[i]);
    }
    env
}

/// `V(φ) = {i ∈ I : φ(x_i, ..., y_i) holds in the i-th structure}`, as a mask.
pub fn truth_set(family: &[Structure], phi: &Formula, choices: &Choices) -> Result<u32, LosError> {
    check_family(family)?;
    check_choices(family, choices)?;
    let mut set = 0u32;
    for (i, st) in family.iter().enumerate() {
        if eval(st, phi, &env_at(choices, i))? {
            set |= 1 << i;
        }
    }
    Ok(set)
}

/// `φ` is true along `U`: its truth set is a member of `U`.
pub fn holds_along(u: &FiniteUltrafilter, family: &[Structure], phi: &Formula, choices: &Choices) -> Result<bool, LosError> {
    check_ultrafilter(family, u)?;
    Ok(u.contains(truth_set(family, phi, choices)?))
}

/// An isomorphism from the ultraproduct onto one factor: `map[class]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub factor: usize,
    pub map: Vec<usize>,
}

/// The quotient of `∏ X_i` by `x ≡ y ⇔ {i : x_i = y_i} ∈ U`.
#[derive(Debug, Clone)]
pub struct Ultraproduct {
    pub structure: Structure,
    sizes: Vec<usize>,
    /// Class of every product element, product elements numbered in mixed
    /// radix with index 0 varying fastest.
    class_of: Vec<usize>,
    /// A representative product element for each class.
    representatives: Vec<Vec<usize>>,
    pub isomorphism: Isomorphism,
}

impl Ultraproduct {
    pub fn classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn product_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn representative(&self, class: usize) -> &[usize] {
        &self.representatives[class]
    }

    /// The class of the family `x`.
    pub fn class_of(&self, x: &[usize]) -> usize {
        let code = x.iter().zip(&self.sizes).rev().fold(0, |acc, (&xi, &s)| acc * s + xi);
        self.class_of[code]
    }

    /// Members of each class, as families.
    pub fn class_members(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); self.classes()];
        for (code, &c) in self.class_of.iter().enumerate() {
            out[c].push(decode(code, &self.sizes));
        }
        out
    }
}

fn decode(mut code: usize, sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .map(|&s| {
            let x = code % s;
            code /= s;
            x
        })
        .collect()
}

fn agreement(x: &[usize], y: &[usize]) -> u32 {
    x.iter().zip(y).enumerate().fold(0, |m, (i, (a, b))| if a == b { m | 1 << i } else { m })
}

/// Builds the ultraproduct literally: classes of `≡ (mod U)` over the whole
/// product, relations decided along `U` on representatives, constants as the
/// classes of their coordinatewise families. The isomorphism onto the factor
/// at `U`'s point is computed and checked before returning.
pub fn ultraproduct(family: &[Structure], u: &FiniteUltrafilter) -> Result<Ultraproduct, LosError> {
    check_family(family)?;
    check_ultrafilter(family, u)?;
    let sizes: Vec<usize> = family.iter().map(Structure::size).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s).filter(|&p| p <= MAX_PRODUCT));
    let total = total.ok_or_else(|| LosError::ResourceGuard(format!("product of universe sizes exceeds {MAX_PRODUCT}")))?;

    let mut representatives: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(total);
    for code in 0..total {
        let x = decode(code, &sizes);
        let class = match representatives.iter().position(|r| u.contains(agreement(&x, r))) {
            Some(c) => c,
            None => {
                representatives.push(x);
                representatives.len() - 1
            }
        };
        class_of.push(class);
    }

    let labels: Vec<String> = representatives
        .iter()
        .map(|r| {
            let parts: Vec<&str> = r.iter().enumerate().map(|(i, &x)| family[i].label(x)).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let mut structure = Structure::with_labels(labels)?;
    let sig = family[0].signature();
    let k = representatives.len();
    for (name, &arity) in &sig.relations {
        let mut tuples = Vec::new();
        let mut args = vec![0usize; arity];
        loop {
            let along: u32 = family.iter().enumerate().try_fold(0u32, |m, (i, st)| {
                let coords: Vec<usize> = args.iter().map(|&c| representatives[c][i]).collect();
                st.holds(name, &coords).map(|h| if h { m | 1 << i } else { m })
            })?;
            if u.contains(along) {
                tuples.push(args.clone());
            }
            // next tuple of classes
            let mut p = 0;
            while p < arity {
                args[p] += 1;
                if args[p] < k {
                    break;
                }
                args[p] = 0;
                p += 1;
            }
            if p == arity {
                break;
            }
        }
        structure.add_relation(name, arity, tuples)?;
    }
    let mut up = Ultraproduct {
        structure,
        sizes,
        class_of,
        representatives,
        isomorphism: Isomorphism { factor: u.point(), map: Vec::new() },
    };
    for c in &sig.constants {
        let x: Vec<usize> = family.iter().map(|st| st.constant(c).expect("shared signature")).collect();
        let class = up.class_of(&x);
        up.structure.add_constant(c, class)?;
    }
    up.isomorphism = factor_isomorphism(&up, family, u.point())?;
    Ok(up)
}

fn factor_isomorphism(up: &Ultraproduct, family: &[Structure], i0: usize) -> Result<Isomorphism, LosError> {
    let factor = &family[i0];
    let map: Vec<usize> = up.representatives.iter().map(|r| r[i0]).collect();
    let mut hit = vec![false; factor.size()];
    for &y in &map {
        if std::mem::replace(&mut hit[y], true) {
            return Err(LosError::Internal("ultraproduct classes collide in the factor".into()));
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(LosError::Internal("ultraproduct misses an element of the factor".into()));
    }
    let sig = factor.signature();
    for (name, &arity) in &sig.relations {
        let mut args = vec![0usize; arity];
        loop {
            let image: Vec<usize> = args.iter().map(|&c| map[c]).collect();
            if up.structure.holds(name, &args)? != factor.holds(name, &image)? {
                return Err(LosError::Internal(format!("relation `{name}` is not preserved at {args:?}")));
            }
            let mut p = 0;
            while p < arity {
                args[p] += 1;
                if args[p] < map.len() {
                    break;
                }
                args[p] = 0;
                p += 1;
            }
            if p == arity {
                break;
            }
        }
    }
    for c in &sig.constants {
        if up.structure.constant(c).map(|x| map[x]) != factor.constant(c) {
            return Err(LosError::Internal(format!("constant `{c}` is not preserved")));
        }
    }
    Ok(Isomorphism { factor: i0, map })
}

/// Both sides of the truth lemma for one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LosReport {
    /// Truth in the ultraproduct at the classes of the chosen families.
    pub lhs: bool,
    /// Truth along `U`.
    pub rhs: bool,
    /// Truth along `U` recomputed by the four induction cases.
    pub induction: bool,
    /// Induction steps taken.
    pub steps: usize,
    pub agree: bool,
}

/// Evaluates `φ` in the ultraproduct and along `U`, and replays the
/// induction proving they agree.
pub fn los_verify(
    family: &[Structure],
    u: &FiniteUltrafilter,
    phi: &Formula,
    choices: &Choices,
) -> Result<LosReport, LosError> {
    check_choices(family, choices)?;
    let up = ultraproduct(family, u)?;
    let mut env = Env::new();
    for (v, xs) in choices {
        env.bind(v.clone(), up.class_of(xs));
    }
    let lhs = eval(&up.structure, phi, &env)?;
    let rhs = holds_along(u, family, phi, choices)?;
    let mut steps = 0;
    let induction = induction(family, u, phi, &mut choices.clone(), &mut steps)?;
    Ok(LosReport { lhs, rhs, induction, steps, agree: lhs == rhs && rhs == induction })
}

/// Truth along `U` by structural recursion:
///
/// * atoms: the truth set is a member of `U`;
/// * `not Q`: the truth sets of `Q` and `not Q` are complementary, so exactly
///   one is in `U`;
/// * `R or S`: the truth set is the union, which is in `U` iff one side is;
/// * `exists z. Q`: with `W` the truth set, pick `c_i` a witness for
///   `i ∈ W` and the least element elsewhere; then `Q(c)` holds exactly on
///   `W`, and the case reduces to `Q(c)`.
///
/// Each case's set identity is checked as it is used.
fn induction(
    family: &[Structure],
    u: &FiniteUltrafilter,
    phi: &Formula,
    choices: &mut Choices,
    steps: &mut usize,
) -> Result<bool, LosError> {
    *steps += 1;
    let full = (1u32 << family.len()) - 1;
    match phi {
        Formula::Eq(..) | Formula::Rel(..) => Ok(u.contains(truth_set(family, phi, choices)?)),
        Formula::Not(q) => {
            if truth_set(family, phi, choices)? != !truth_set(family, q, choices)? & full {
                return Err(LosError::Internal("negation case: truth sets are not complementary".into()));
            }
            Ok(!induction(family, u, q, choices, steps)?)
        }
        Formula::Or(r, s) => {
            if truth_set(family, phi, choices)? != truth_set(family, r, choices)? | truth_set(family, s, choices)? {
                return Err(LosError::Internal("disjunction case: truth set is not the union".into()));
            }
            let a = induction(family, u, r, choices, steps)?;
            let b = induction(family, u, s, choices, steps)?;
            Ok(a || b)
        }
        Formula::Exists(z, q) => {
            let w = truth_set(family, phi, choices)?;
            let mut witness = Vec::with_capacity(family.len());
            for (i, st) in family.iter().enumerate() {
                let mut env = env_at(choices, i);
                let mut c = 0;
                if w >> i & 1 == 1 {
                    c = (0..st.size())
                        .find(|&x| {
                            env.bind(z.clone(), x);
                            let r = eval(st, q, &env);
                            env = env_at(choices, i);
                            r.unwrap_or(false)
                        })
                        .ok_or_else(|| LosError::Internal("existential case: no witness in the truth set".into()))?;
                }
                witness.push(c);
            }
            let saved = choices.insert(z.clone(), witness);
            let completed = truth_set(family, q, choices);
            let result = match completed {
                Ok(v) if v == w => induction(family, u, q, choices, steps),
                Ok(_) => Err(LosError::Internal("existential case: completed witness does not realize the truth set".into())),
                Err(e) => Err(e),
            };
            match saved {
                Some(old) => choices.insert(z.clone(), old),
                None => choices.remove(z),
            };
            result
        }
    }
}

/// For a sentence and a family of copies of one structure, the ultraproduct,
/// the structure, and truth along `U` all agree.
pub fn transfer_check(st: &Structure, copies: usize, u: &FiniteUltrafilter, sentence: &Formula) -> Result<bool, LosError> {
    let free: Vec<String> = sentence.free_names().into_iter().filter(|n| st.constant(n).is_none()).collect();
    if let Some(v) = free.first() {
        return Err(LosError::UnboundVariable(v.clone()));
    }
    let family = vec![st.clone(); copies];
    let up = ultraproduct(&family, u)?;
    let in_factor = eval(st, sentence, &Env::new())?;
    let in_product = eval(&up.structure, sentence, &Env::new())?;
    let along = holds_along(u, &family, sentence, &Choices::new())?;
    Ok(in_factor == in_product && in_product == along)
}

#[cfg(test)]
mod tests {
    use super::super::parse_formula;
    use super::*;
    use crate::filters::principal;

    fn chain(n: usize) -> Structure {
        let mut st = Structure::new(n).unwrap();
        let tuples = (0..n).flat_map(|x| (x + 1..n).map(move |y| vec![x, y])).collect();
        st.add_relation("L", 2, tuples).unwrap();
        st
    }

    fn choices(pairs: &[(&str, &[usize])]) -> Choices {
        pairs.iter().map(|(v, xs)| (v.to_string(), xs.to_vec())).collect()
    }

    #[test]
    fn truth_set_of_equality() {
        let fam = vec![chain(3), chain(2), chain(3)];
        let ch = choices(&[("x", &[0, 1, 2]), ("y", &[0, 0, 2])]);
        assert_eq!(truth_set(&fam, &parse_formula("x = y").unwrap(), &ch).unwrap(), 0b101);
        let valid = parse_formula("forall x. x = x").unwrap();
        assert_eq!(truth_set(&fam, &valid, &Choices::new()).unwrap(), 0b111);
    }

    #[test]
    fn along_principal_is_evaluation_at_the_point() {
        let fam = vec![chain(3), chain(2), chain(3)];
        let ch = choices(&[("x", &[0, 1, 2]), ("y", &[1, 0, 2])]);
        let phi = parse_formula("L(x, y)").unwrap();
        for i0 in 0..3 {
            let u = principal(3, i0).unwrap();
            let at = eval(&fam[i0], &phi, &env_at(&ch, i0)).unwrap();
            assert_eq!(holds_along(&u, &fam, &phi, &ch).unwrap(), at);
            assert_eq!(holds_along(&u, &fam, &Formula::not(phi.clone()), &ch).unwrap(), !at);
        }
    }

    #[test]
    fn ultraproduct_is_the_factor() {
        let fam = vec![chain(2), chain(3)];
        let u = principal(2, 1).unwrap();
        let up = ultraproduct(&fam, &u).unwrap();
        assert_eq!(up.product_size(), 6);
        assert_eq!(up.classes(), 3);
        assert_eq!(up.isomorphism.factor, 1);
        let members = up.class_members();
        assert!(members.iter().all(|m| m.len() == 2));
        // classes agree at the point
        for m in &members {
            assert!(m.iter().all(|x| x[1] == m[0][1]));
        }
    }

    #[test]
    fn constant_family_gives_the_factor() {
        let st = chain(3);
        let up = ultraproduct(&vec![st.clone(); 3], &principal(3, 0).unwrap()).unwrap();
        assert_eq!(up.classes(), 3);
        let sentence = parse_formula("exists x. forall y. (x = y or L(x, y))").unwrap();
        assert!(transfer_check(&st, 3, &principal(3, 2).unwrap(), &sentence).unwrap());
        assert!(eval(&up.structure, &sentence, &Env::new()).unwrap());
    }

    #[test]
    fn los_on_nested_quantifiers() {
        let fam = vec![chain(3), chain(1), chain(2)];
        let ch = choices(&[("x", &[1, 0, 0])]);
        let phi = parse_formula("exists z. (L(x, z) and not exists w. (L(x, w) and L(w, z)))").unwrap();
        for i0 in 0..3 {
            let r = los_verify(&fam, &principal(3, i0).unwrap(), &phi, &ch).unwrap();
            assert!(r.agree, "{r:?}");
        }
        let trivial = parse_formula("exists z. z = x").unwrap();
        let r = los_verify(&fam, &principal(3, 1).unwrap(), &trivial, &ch).unwrap();
        assert!(r.lhs && r.rhs && r.agree);
    }

    #[test]
    fn equivalent_choices_give_the_same_verdict() {
        let fam = vec![chain(3), chain(3)];
        let u = principal(2, 0).unwrap();
        let phi = parse_formula("exists y. L(x, y)").unwrap();
        // x and x' agree at index 0, so they are equivalent mod U
        let a = holds_along(&u, &fam, &phi, &choices(&[("x", &[1, 2])])).unwrap();
        let b = holds_along(&u, &fam, &phi, &choices(&[("x", &[1, 0])])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_inputs() {
        let fam = vec![chain(2), chain(2)];
        let u = principal(3, 0).unwrap();
        assert!(matches!(ultraproduct(&fam, &u), Err(LosError::Family(_))));
        let mut other = chain(2);
        other.add_constant("c", 0).unwrap();
        assert!(matches!(ultraproduct(&[chain(2), other], &principal(2, 0).unwrap()), Err(LosError::Family(_))));
        let bad = choices(&[("x", &[0, 5])]);
        assert!(matches!(truth_set(&fam, &parse_formula("x = x").unwrap(), &bad), Err(LosError::Family(_))));
    }
}
