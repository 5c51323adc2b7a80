//! Reversibility of a regular language, decided twice: by searching the
//! canonical automaton for the forbidden configuration `f ≠ g ≠ h` with
//! `f∘x = g = g∘x` and `g∘y = h`, and by checking the identity
//! `x^ω y ∨ (x^ω z ∧ t) = x^ω y ∨ (x^ω t ∧ z)` on word substitutions in the
//! syntactic lattice algebra.

use std::collections::VecDeque;

use crate::atoms::{join_meet_eq, AtomSet, ProfileTable};
use crate::config::Budgets;
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::syntactic::{syntactic_monoid, SyntacticMonoid};
use crate::term::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub f: StateId,
    pub g: StateId,
    pub h: StateId,
    pub x: Word,
    pub y: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCounterexample {
    pub p: Word,
    pub u: Word,
    pub v: Word,
    pub w: Word,
    /// Residual at which the two sides differ.
    pub state: StateId,
    pub left: AtomSet,
    pub right: AtomSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub reversible: bool,
    pub witness: Option<ForbiddenWitness>,
    pub identity_counterexample: Option<IdentityCounterexample>,
    /// Counterexample built from `witness` by separator words.
    pub constructed_counterexample: Option<IdentityCounterexample>,
}

/// First `(x, f)` in element and state order with `f∘x = g = g∘x`, `g ≠ f`,
/// from which some `h ≠ g` is reachable; `y` is a shortest word to it.
pub fn find_forbidden_configuration(dfa: &Dfa, monoid: &SyntacticMonoid) -> Option<ForbiddenWitness> {
    for e in monoid.elements() {
        for f in dfa.states() {
            let g = e.map[f.index()];
            if g == f.index() || e.map[g] != g {
                continue;
            }
            if let Some((h, y)) = first_other_reachable(dfa, StateId(g)) {
                return Some(ForbiddenWitness { f, g: StateId(g), h, x: e.witness.clone(), y });
            }
        }
    }
    None
}

/// Breadth-first search from `g` for the first state other than `g`.
fn first_other_reachable(dfa: &Dfa, g: StateId) -> Option<(StateId, Word)> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; dfa.num_states()];
    let mut seen = vec![false; dfa.num_states()];
    seen[g.index()] = true;
    let mut queue = VecDeque::from([g.index()]);
    while let Some(q) = queue.pop_front() {
        for a in 0..dfa.alphabet().len() {
            let r = dfa.step(StateId(q), a).index();
            if seen[r] {
                continue;
            }
            seen[r] = true;
            parent[r] = Some((q, a));
            if r != g.index() {
                let mut letters = Vec::new();
                let mut cur = r;
                while let Some((prev, a)) = parent[cur] {
                    letters.push(dfa.alphabet().letter(a));
                    cur = prev;
                }
                letters.reverse();
                return Some((StateId(r), Word::new(&letters.iter().collect::<String>())));
            }
            queue.push_back(r);
        }
    }
    None
}

/// Checks the identity for every quadruple of monoid elements in index
/// order and returns the first failure.
pub fn check_reversibility_identity(
    monoid: &SyntacticMonoid,
    pt: &ProfileTable,
    dfa: &Dfa,
    quadruple_warning: u64,
) -> Option<IdentityCounterexample> {
    let n = monoid.len();
    let quadruples = (n as u64).saturating_pow(4);
    if quadruples > quadruple_warning {
        log::warn!("identity check enumerates {quadruples} quadruples");
    }
    let residuals: Vec<&AtomSet> = dfa.states().map(|q| pt.residual(q)).collect();
    let maps: Vec<&[usize]> = monoid.elements().iter().map(|e| e.map.as_slice()).collect();
    for p in 0..n {
        let s = maps[monoid.omega_power(p)];
        let moved: Vec<usize> = (0..dfa.num_states()).filter(|&q| s[q] != q).collect();
        if moved.is_empty() {
            continue;
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    for &q in &moved {
                        let g = s[q];
                        let (a, b, c, d, e) = (
                            residuals[maps[u][g]],
                            residuals[maps[v][g]],
                            residuals[maps[w][q]],
                            residuals[maps[w][g]],
                            residuals[maps[v][q]],
                        );
                        if !join_meet_eq(a, b, c, d, e) {
                            let word = |i: usize| monoid.element(i).witness.clone();
                            return Some(IdentityCounterexample {
                                p: word(p),
                                u: word(u),
                                v: word(v),
                                w: word(w),
                                state: StateId(q),
                                left: a.join(&b.meet(c)),
                                right: a.join(&d.meet(e)),
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Both sides of the identity at residual `q` for the substitution
/// `x = p, y = u, z = v, t = w`.
pub fn identity_sides(
    monoid: &SyntacticMonoid,
    pt: &ProfileTable,
    p: &Word,
    u: &Word,
    v: &Word,
    w: &Word,
    q: StateId,
) -> Result<(AtomSet, AtomSet)> {
    let map = |word: &Word| -> Result<&[usize]> {
        Ok(monoid.element(monoid.element_of_word(&word.as_string())?).map.as_slice())
    };
    let s = monoid.element(monoid.omega_power(monoid.element_of_word(&p.as_string())?)).map.as_slice();
    let (mu, mv, mw) = (map(u)?, map(v)?, map(w)?);
    let r = |i: usize| pt.residual(StateId(i));
    let g = s[q.index()];
    let left = r(mu[g]).join(&r(mv[g]).meet(r(mw[q.index()])));
    let right = r(mu[g]).join(&r(mw[g]).meet(r(mv[q.index()])));
    Ok((left, right))
}

/// Shortest word in exactly one of the residuals of `p` and `q`, and whether
/// it lies in the residual of `p`.
fn separator(dfa: &Dfa, p: StateId, q: StateId) -> Option<(Word, bool)> {
    let n = dfa.num_states();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let start = p.index() * n + q.index();
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        let (x, y) = (StateId(pair / n), StateId(pair % n));
        if dfa.is_final(x) != dfa.is_final(y) {
            let mut letters = Vec::new();
            let mut cur = pair;
            while let Some((prev, a)) = parent[cur] {
                letters.push(dfa.alphabet().letter(a));
                cur = prev;
            }
            letters.reverse();
            return Some((Word::new(&letters.iter().collect::<String>()), dfa.is_final(x)));
        }
        for a in 0..dfa.alphabet().len() {
            let next = dfa.step(x, a).index() * n + dfa.step(y, a).index();
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((pair, a));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Turns a forbidden configuration into a failing substitution of the
/// identity, evaluated at `f`.
///
/// With `s` separating `f` from `g` and `r` separating `g` from `h`, and
/// `p = x`:
/// `s ∈ f, r ∈ g`: `u = s, v = r, w = s`;
/// `s ∈ f, r ∈ h`: `u = s, v = yr, w = s`;
/// `s ∈ g, r ∈ g`: `u = yr, v = s, w = pr`;
/// `s ∈ g, r ∈ h`: `u = r, v = s, w = ps`.
pub fn counterexample_from_witness(
    monoid: &SyntacticMonoid,
    pt: &ProfileTable,
    dfa: &Dfa,
    witness: &ForbiddenWitness,
) -> Result<IdentityCounterexample> {
    let ForbiddenWitness { f, g, h, x, y } = witness;
    let (s, s_in_f) =
        separator(dfa, *f, *g).ok_or_else(|| Error::Inconsistency("distinct states are equivalent".into()))?;
    let (r, r_in_g) =
        separator(dfa, *g, *h).ok_or_else(|| Error::Inconsistency("distinct states are equivalent".into()))?;
    let p = x.clone();
    let (u, v, w) = match (s_in_f, r_in_g) {
        (true, true) => (s.clone(), r, s),
        (true, false) => (s.clone(), y.concat(&r), s),
        (false, true) => (y.concat(&r), s, p.concat(&r)),
        (false, false) => (r, s.clone(), p.concat(&s)),
    };
    let (left, right) = identity_sides(monoid, pt, &p, &u, &v, &w, *f)?;
    if !pt.contains_lambda(&left) || pt.contains_lambda(&right) {
        return Err(Error::Inconsistency(format!(
            "substitution p={p}, u={u}, v={v}, w={w} does not violate the identity at {f}"
        )));
    }
    Ok(IdentityCounterexample { p, u, v, w, state: *f, left, right })
}

/// Decides reversibility by both methods; disagreement is an error.
pub fn is_reversible(dfa: &Dfa, pt: &ProfileTable, budgets: &Budgets) -> Result<ReversibilityReport> {
    let monoid = syntactic_monoid(dfa, budgets.elements)?;
    let witness = find_forbidden_configuration(dfa, &monoid);
    let identity_counterexample = check_reversibility_identity(&monoid, pt, dfa, budgets.quadruples);
    if witness.is_some() != identity_counterexample.is_some() {
        return Err(Error::Inconsistency(format!(
            "forbidden configuration {} but identity {}",
            if witness.is_some() { "found" } else { "absent" },
            if identity_counterexample.is_some() { "fails" } else { "holds" },
        )));
    }
    let constructed_counterexample =
        witness.as_ref().map(|w| counterexample_from_witness(&monoid, pt, dfa, w)).transpose()?;
    Ok(ReversibilityReport {
        reversible: witness.is_none(),
        witness,
        identity_counterexample,
        constructed_counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Language;

    fn lang(re: &str, letters: &str) -> Language {
        Language::new(re, letters, &Budgets::default()).unwrap()
    }

    #[test]
    fn a_plus_b_plus_has_forbidden_configuration() {
        let l = lang("a+b+", "ab");
        let m = syntactic_monoid(&l.dfa, 100).unwrap();
        let w = find_forbidden_configuration(&l.dfa, &m).unwrap();
        assert_eq!((w.f, w.g, w.h), (StateId(0), StateId(1), StateId(3)));
        assert_eq!((w.x.as_string(), w.y.as_string()), ("a".into(), "b".into()));
        assert_eq!(l.dfa.run(w.f, "a").unwrap(), w.g);
        assert_eq!(l.dfa.run(w.g, "a").unwrap(), w.g);
        assert_eq!(l.dfa.run(w.g, "b").unwrap(), w.h);
    }

    #[test]
    fn a_plus_b_plus_is_not_reversible() {
        let l = lang("a+b+", "ab");
        let report = is_reversible(&l.dfa, &l.table, &Budgets::default()).unwrap();
        assert!(!report.reversible);
        let ce = report.identity_counterexample.unwrap();
        let (left, right) =
            identity_sides(&syntactic_monoid(&l.dfa, 100).unwrap(), &l.table, &ce.p, &ce.u, &ce.v, &ce.w, ce.state)
                .unwrap();
        assert_ne!(left, right);
        let built = report.constructed_counterexample.unwrap();
        assert_eq!(built.state, StateId(0));
        assert!(l.table.contains_lambda(&built.left) && !l.table.contains_lambda(&built.right));
    }

    #[test]
    fn reversible_examples() {
        for (re, letters) in [("a*", "ab"), ("%0", "a"), ("%e", "a"), ("(aa)*", "a")] {
            let l = lang(re, letters);
            let m = syntactic_monoid(&l.dfa, 100).unwrap();
            assert!(find_forbidden_configuration(&l.dfa, &m).is_none(), "{re}");
            assert!(is_reversible(&l.dfa, &l.table, &Budgets::default()).unwrap().reversible, "{re}");
        }
    }

    #[test]
    fn equal_substitutions_agree() {
        let l = lang("a+b+", "ab");
        let m = syntactic_monoid(&l.dfa, 100).unwrap();
        for e in m.elements() {
            for f in m.elements() {
                for q in l.dfa.states() {
                    let (left, right) =
                        identity_sides(&m, &l.table, &e.witness, &f.witness, &e.witness, &e.witness, q).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}
