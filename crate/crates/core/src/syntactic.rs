//! Syntactic monoid, syntactic idempotent semiring and syntactic lattice
//! algebra of a regular language, each represented by the action of its
//! elements on the states of the canonical automaton.
//!
//! An element is identified by where it sends each residual: to a residual
//! (monoid), to an intersection of residuals (semiring) or to a union of
//! intersections of residuals (lattice algebra). Every element also carries a
//! witness term realizing it, the least one found during closure.

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::Alphabet;
use crate::atoms::{AtomSet, ProfileTable};
use crate::canonical::{build_lattice_automaton, build_meet_automaton, HasseDiagram, LatticeAutomaton, MeetAutomaton};
use crate::config::Budgets;
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::term::{eval_lattice_form, eval_meet_form, multiply_lattice_forms, LatticeForm, MeetForm, Word};

/// A transformation of the canonical automaton's states and the least word
/// inducing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfaTransformation {
    pub map: Vec<usize>,
    pub witness: Word,
}

#[derive(Clone, Debug)]
pub struct SyntacticMonoid {
    alphabet: Alphabet,
    elements: Vec<DfaTransformation>,
    index: HashMap<Vec<usize>, usize>,
    /// `right[e * k + a]`: the element `e·a`.
    right: Vec<usize>,
    identity: usize,
}

fn over_budget(limit: usize) -> Error {
    Error::BudgetExceeded { what: "element", limit }
}

/// Transition monoid of `dfa`, elements numbered in shortlex order of their
/// least witnesses.
pub fn syntactic_monoid(dfa: &Dfa, max_elements: usize) -> Result<SyntacticMonoid> {
    let n = dfa.num_states();
    let k = dfa.alphabet().len();
    let identity: Vec<usize> = (0..n).collect();
    let mut elements = vec![DfaTransformation { map: identity.clone(), witness: Word::empty() }];
    let mut index = HashMap::from([(identity, 0)]);
    let mut right = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for a in 0..k {
            let map: Vec<usize> = elements[i].map.iter().map(|&q| dfa.step(StateId(q), a).index()).collect();
            let id = match index.get(&map) {
                Some(&id) => id,
                None => {
                    if elements.len() >= max_elements {
                        return Err(over_budget(max_elements));
                    }
                    let witness = elements[i].witness.concat(&Word::new(&dfa.alphabet().letter(a).to_string()));
                    index.insert(map.clone(), elements.len());
                    elements.push(DfaTransformation { map, witness });
                    elements.len() - 1
                }
            };
            right.push(id);
        }
        i += 1;
    }
    Ok(SyntacticMonoid { alphabet: dfa.alphabet().clone(), elements, index, right, identity: 0 })
}

impl SyntacticMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn elements(&self) -> &[DfaTransformation] {
        &self.elements
    }

    pub fn element(&self, e: usize) -> &DfaTransformation {
        &self.elements[e]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Element of the `a`-th letter.
    pub fn generator(&self, a: usize) -> usize {
        self.right[self.identity * self.alphabet.len() + a]
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.alphabet.len()).map(|a| self.generator(a)).collect()
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }

    /// Element of a word over the alphabet.
    pub fn element_of_word(&self, word: &str) -> Result<usize> {
        let letters = self.alphabet.encode(word)?;
        Ok(letters.iter().fold(self.identity, |e, &a| self.right[e * self.alphabet.len() + a]))
    }

    /// `e·f`: first `e`, then `f`.
    pub fn multiply(&self, e: usize, f: usize) -> usize {
        let k = self.alphabet.len();
        self.elements[f]
            .witness
            .letters()
            .iter()
            .fold(e, |acc, &c| self.right[acc * k + self.alphabet.index_of(c).expect("witness letter")])
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|e| (0..self.len()).map(|f| self.multiply(e, f)).collect()).collect()
    }

    /// The idempotent power of `e`.
    pub fn omega_power(&self, e: usize) -> usize {
        let mut p = e;
        for _ in 0..=self.len() {
            if self.multiply(p, p) == p {
                return p;
            }
            p = self.multiply(p, e);
        }
        unreachable!("a finite monoid has an idempotent power of every element")
    }
}

pub fn omega_power(m: &SyntacticMonoid, e: usize) -> usize {
    m.omega_power(e)
}

/// Witnesses are compared by letter count, then word count, then normal form.
fn better<F: Ord>(key: (usize, usize), form: &F, old_key: (usize, usize), old: &F) -> bool {
    (key, form) < (old_key, old)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiringElement {
    /// Meet-automaton state reached from each canonical-automaton state.
    pub images: Vec<usize>,
    pub witness: MeetForm,
}

#[derive(Clone, Debug)]
pub struct SyntacticSemiring {
    automaton: MeetAutomaton,
    elements: Vec<SemiringElement>,
    index: HashMap<Vec<usize>, usize>,
    meet: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    /// `state_images[e][x]`: meet-automaton state `x∘e`.
    state_images: Vec<Vec<usize>>,
    one: usize,
    top: usize,
    generators: Vec<usize>,
    order: HasseDiagram,
}

/// Closure of `1`, the letters and `⊤` under `∧` and `·`.
pub fn syntactic_semiring(pt: &ProfileTable, dfa: &Dfa, budgets: &Budgets) -> Result<SyntacticSemiring> {
    let automaton = build_meet_automaton(pt, dfa, budgets.states)?;
    let nq = dfa.num_states();
    let nm = automaton.num_states();
    let k = dfa.alphabet().len();
    let states = automaton.states();
    let lookup = |x: &AtomSet| automaton.index_of(x).ok_or_else(|| Error::Inconsistency("meet not closed".into()));
    let mut meet_states = vec![vec![0; nm]; nm];
    for i in 0..nm {
        for j in 0..nm {
            meet_states[i][j] = lookup(&states[i].meet(&states[j]))?;
        }
    }
    let residual_index: Vec<usize> = dfa.states().map(|q| lookup(pt.residual(q))).collect::<Result<_>>()?;
    let top_state = lookup(&pt.top())?;
    // Residuals containing each meet-automaton state; their meet is the state.
    let above: Vec<Vec<usize>> =
        states.iter().map(|x| dfa.states().filter(|&q| x.leq(pt.residual(q))).map(|q| q.index()).collect()).collect();
    let extend = |g: &[usize], x: usize| above[x].iter().fold(top_state, |acc, &q| meet_states[acc][g[q]]);
    let product = |f: &[usize], g: &[usize]| -> Vec<usize> { f.iter().map(|&x| extend(g, x)).collect() };

    let mut elements: Vec<SemiringElement> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut add = |images: Vec<usize>, witness: MeetForm, elements: &mut Vec<SemiringElement>| -> Result<usize> {
        if let Some(&id) = index.get(&images) {
            let old = &elements[id].witness;
            if better(witness.size_key(), &witness, old.size_key(), old) {
                elements[id].witness = witness;
            }
            return Ok(id);
        }
        if elements.len() >= budgets.elements {
            return Err(over_budget(budgets.elements));
        }
        index.insert(images.clone(), elements.len());
        elements.push(SemiringElement { images, witness });
        Ok(elements.len() - 1)
    };
    let one = add(residual_index.clone(), MeetForm::word(Word::empty()), &mut elements)?;
    let mut generators = Vec::with_capacity(k);
    for a in 0..k {
        let images = dfa.states().map(|q| residual_index[dfa.step(q, a).index()]).collect();
        let letter = Word::new(&dfa.alphabet().letter(a).to_string());
        generators.push(add(images, MeetForm::word(letter), &mut elements)?);
    }
    let top = add(vec![top_state; nq], MeetForm::top(), &mut elements)?;

    let mut i = 0;
    while i < elements.len() {
        for j in 0..=i {
            let (fi, fj) = (elements[i].images.clone(), elements[j].images.clone());
            let (wi, wj) = (elements[i].witness.clone(), elements[j].witness.clone());
            let m = fi.iter().zip(&fj).map(|(&x, &y)| meet_states[x][y]).collect();
            add(m, wi.meet(&wj), &mut elements)?;
            add(product(&fi, &fj), wi.multiply(&wj), &mut elements)?;
            add(product(&fj, &fi), wj.multiply(&wi), &mut elements)?;
        }
        i += 1;
    }

    let n = elements.len();
    let find = |images: Vec<usize>| {
        index.get(&images).copied().ok_or_else(|| Error::Inconsistency("semiring not closed".into()))
    };
    let mut meet = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (fi, fj) = (&elements[i].images, &elements[j].images);
            meet[i][j] = find(fi.iter().zip(fj).map(|(&x, &y)| meet_states[x][y]).collect())?;
            mul[i][j] = find(product(fi, fj))?;
        }
    }
    let state_images = elements.iter().map(|e| (0..nm).map(|x| extend(&e.images, x)).collect()).collect();
    let order = HasseDiagram::from_order(n, |i, j| meet[i][j] == i);
    Ok(SyntacticSemiring { automaton, elements, index, meet, mul, state_images, one, top, generators, order })
}

impl SyntacticSemiring {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn automaton(&self) -> &MeetAutomaton {
        &self.automaton
    }

    pub fn elements(&self) -> &[SemiringElement] {
        &self.elements
    }

    pub fn element(&self, e: usize) -> &SemiringElement {
        &self.elements[e]
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn meet(&self, e: usize, f: usize) -> usize {
        self.meet[e][f]
    }

    pub fn multiply(&self, e: usize, f: usize) -> usize {
        self.mul[e][f]
    }

    pub fn meet_table(&self) -> &[Vec<usize>] {
        &self.meet
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// Meet-automaton state `x∘e`.
    pub fn state_image(&self, e: usize, x: usize) -> usize {
        self.state_images[e][x]
    }

    pub fn order(&self) -> &HasseDiagram {
        &self.order
    }

    pub fn hasse(&self) -> &HasseDiagram {
        &self.order
    }

    pub fn index_of(&self, images: &[usize]) -> Option<usize> {
        self.index.get(images).copied()
    }

    /// Element whose action on residuals is that of `form`.
    pub fn element_of(&self, pt: &ProfileTable, form: &MeetForm) -> Result<Option<usize>> {
        let images = pt
            .dfa()
            .states()
            .map(|q| {
                let x = eval_meet_form(pt, pt.residual(q), form)?;
                self.automaton.index_of(&x).ok_or_else(|| Error::Inconsistency("image outside meet automaton".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.index_of(&images))
    }

    /// Failures of the idempotent-semiring laws on the tables.
    pub fn check_axioms(&self) -> Vec<String> {
        let n = self.len();
        let (m, p, top, one) = (&self.meet, &self.mul, self.top, self.one);
        let mut bad = Vec::new();
        for x in 0..n {
            if m[x][x] != x || m[x][top] != x {
                bad.push(format!("meet unit or idempotence at {x}"));
            }
            if p[x][one] != x || p[one][x] != x {
                bad.push(format!("identity at {x}"));
            }
            if p[x][top] != top || p[top][x] != top {
                bad.push(format!("zero at {x}"));
            }
            for y in 0..n {
                if m[x][y] != m[y][x] {
                    bad.push(format!("meet commutativity at {x},{y}"));
                }
                for z in 0..n {
                    if m[m[x][y]][z] != m[x][m[y][z]] {
                        bad.push(format!("meet associativity at {x},{y},{z}"));
                    }
                    if p[p[x][y]][z] != p[x][p[y][z]] {
                        bad.push(format!("product associativity at {x},{y},{z}"));
                    }
                    if p[x][m[y][z]] != m[p[x][y]][p[x][z]] {
                        bad.push(format!("left distributivity at {x},{y},{z}"));
                    }
                    if p[m[y][z]][x] != m[p[y][x]][p[z][x]] {
                        bad.push(format!("right distributivity at {x},{y},{z}"));
                    }
                }
            }
        }
        bad
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAlgebraElement {
    /// Lattice-automaton state reached from each canonical-automaton state.
    pub images: Vec<usize>,
    pub witness: LatticeForm,
}

#[derive(Clone, Debug)]
pub struct SyntacticLatticeAlgebra {
    table: ProfileTable,
    automaton: LatticeAutomaton,
    residual_index: Vec<usize>,
    elements: Vec<LatticeAlgebraElement>,
    index: HashMap<Vec<usize>, usize>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    /// `state_images[e][s]`: lattice-automaton state `s∘w` for the witness `w` of `e`.
    state_images: Vec<Vec<usize>>,
    one: usize,
    top: usize,
    bottom: usize,
    generators: Vec<usize>,
    order: HasseDiagram,
}

/// Closure of `1`, the letters, `⊤` and `⊥` under `∧`, `∨` and right
/// multiplication by letters.
pub fn syntactic_lattice_algebra(pt: &ProfileTable, dfa: &Dfa, budgets: &Budgets) -> Result<SyntacticLatticeAlgebra> {
    let automaton = build_lattice_automaton(pt, dfa, budgets.states)?;
    let nq = dfa.num_states();
    let nl = automaton.num_states();
    let k = dfa.alphabet().len();
    let states = automaton.states();
    let lookup = |x: &AtomSet| automaton.index_of(x).ok_or_else(|| Error::Inconsistency("lattice not closed".into()));
    let mut meet_states = vec![vec![0; nl]; nl];
    let mut join_states = vec![vec![0; nl]; nl];
    for i in 0..nl {
        for j in 0..nl {
            meet_states[i][j] = lookup(&states[i].meet(&states[j]))?;
            join_states[i][j] = lookup(&states[i].join(&states[j]))?;
        }
    }
    let residual_index: Vec<usize> = dfa.states().map(|q| lookup(pt.residual(q))).collect::<Result<_>>()?;
    let letters: Vec<Word> = dfa.alphabet().letters().iter().map(|c| Word::new(&c.to_string())).collect();

    let mut elements: Vec<LatticeAlgebraElement> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut add =
        |images: Vec<usize>, witness: LatticeForm, elements: &mut Vec<LatticeAlgebraElement>| -> Result<usize> {
            if let Some(&id) = index.get(&images) {
                let old = &elements[id].witness;
                if better(witness.size_key(), &witness, old.size_key(), old) {
                    elements[id].witness = witness;
                }
                return Ok(id);
            }
            if elements.len() >= budgets.elements {
                return Err(over_budget(budgets.elements));
            }
            index.insert(images.clone(), elements.len());
            elements.push(LatticeAlgebraElement { images, witness });
            Ok(elements.len() - 1)
        };
    let one = add(residual_index.clone(), LatticeForm::word(Word::empty()), &mut elements)?;
    let mut generators = Vec::with_capacity(k);
    for (a, letter) in letters.iter().enumerate() {
        let images = dfa.states().map(|q| residual_index[dfa.step(q, a).index()]).collect();
        generators.push(add(images, LatticeForm::word(letter.clone()), &mut elements)?);
    }
    let top = add(vec![lookup(&pt.top())?; nq], LatticeForm::top(), &mut elements)?;
    let bottom = add(vec![lookup(&pt.bottom())?; nq], LatticeForm::bottom(), &mut elements)?;

    let mut i = 0;
    while i < elements.len() {
        for (a, letter) in letters.iter().enumerate() {
            let images = elements[i].images.iter().map(|&s| automaton.step(s, a)).collect();
            let witness = elements[i].witness.append(letter);
            add(images, witness, &mut elements)?;
        }
        for j in 0..i {
            let (fi, fj) = (elements[i].images.clone(), elements[j].images.clone());
            let (wi, wj) = (elements[i].witness.clone(), elements[j].witness.clone());
            let m = fi.iter().zip(&fj).map(|(&x, &y)| meet_states[x][y]).collect();
            add(m, wi.meet(&wj), &mut elements)?;
            let j_ = fi.iter().zip(&fj).map(|(&x, &y)| join_states[x][y]).collect();
            add(j_, wi.join(&wj), &mut elements)?;
        }
        i += 1;
    }

    let n = elements.len();
    let find = |images: Vec<usize>| {
        index.get(&images).copied().ok_or_else(|| Error::Inconsistency("lattice algebra not closed".into()))
    };
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (fi, fj) = (&elements[i].images, &elements[j].images);
            meet[i][j] = find(fi.iter().zip(fj).map(|(&x, &y)| meet_states[x][y]).collect())?;
            join[i][j] = find(fi.iter().zip(fj).map(|(&x, &y)| join_states[x][y]).collect())?;
        }
    }
    let mut state_images = Vec::with_capacity(n);
    for e in &elements {
        let row = states.iter().map(|s| lookup(&eval_lattice_form(pt, s, &e.witness)?)).collect::<Result<Vec<_>>>()?;
        state_images.push(row);
    }
    let mut mul = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            mul[i][j] = find(elements[i].images.iter().map(|&s| state_images[j][s]).collect())?;
        }
    }
    let order = HasseDiagram::from_order(n, |i, j| meet[i][j] == i);
    Ok(SyntacticLatticeAlgebra {
        table: pt.clone(),
        automaton,
        residual_index,
        elements,
        index,
        meet,
        join,
        mul,
        state_images,
        one,
        top,
        bottom,
        generators,
        order,
    })
}

impl SyntacticLatticeAlgebra {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn automaton(&self) -> &LatticeAutomaton {
        &self.automaton
    }

    pub fn table(&self) -> &ProfileTable {
        &self.table
    }

    pub fn elements(&self) -> &[LatticeAlgebraElement] {
        &self.elements
    }

    pub fn element(&self, e: usize) -> &LatticeAlgebraElement {
        &self.elements[e]
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Elements of the letters, in alphabet order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn meet(&self, e: usize, f: usize) -> usize {
        self.meet[e][f]
    }

    pub fn join(&self, e: usize, f: usize) -> usize {
        self.join[e][f]
    }

    pub fn multiply(&self, e: usize, f: usize) -> usize {
        self.mul[e][f]
    }

    /// Lattice-automaton state `s∘w` for the witness `w` of `e`.
    pub fn state_image(&self, e: usize, s: usize) -> usize {
        self.state_images[e][s]
    }

    pub fn order(&self) -> &HasseDiagram {
        &self.order
    }

    pub fn index_of(&self, images: &[usize]) -> Option<usize> {
        self.index.get(images).copied()
    }

    /// Element whose action on residuals is that of `form`.
    pub fn element_of(&self, form: &LatticeForm) -> Result<Option<usize>> {
        let images = self.images_of(form)?;
        Ok(self.index_of(&images))
    }

    fn images_of(&self, form: &LatticeForm) -> Result<Vec<usize>> {
        self.residual_index
            .iter()
            .map(|&s| {
                let x = eval_lattice_form(&self.table, self.automaton.state(s), form)?;
                self.automaton
                    .index_of(&x)
                    .ok_or_else(|| Error::Inconsistency("image outside lattice automaton".into()))
            })
            .collect()
    }

    pub fn tables(&self) -> LatticeAlgebraTables {
        LatticeAlgebraTables {
            size: self.len(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            mul: self.mul.clone(),
            generators: self.generators.clone(),
            bottom: self.bottom,
            top: self.top,
            one: self.one,
        }
    }
}

/// Product of two elements through their witnesses: the product form is
/// built and evaluated on every residual.
pub fn multiply_lattice_elements(alg: &SyntacticLatticeAlgebra, e1: usize, e2: usize) -> Result<usize> {
    let form = multiply_lattice_forms(&alg.elements[e1].witness, &alg.elements[e2].witness);
    alg.element_of(&form)?.ok_or_else(|| Error::Inconsistency(format!("product {form} is not an element")))
}

pub fn hasse_of_elements(alg: &SyntacticLatticeAlgebra) -> &HasseDiagram {
    alg.order()
}

/// Operation tables of a finite algebra `(K, ∧, ∨, ·, P, ⊥, ⊤, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAlgebraTables {
    pub size: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
    pub one: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    MeetIdempotent,
    JoinIdempotent,
    MeetCommutative,
    JoinCommutative,
    MeetAssociative,
    JoinAssociative,
    Absorption,
    LatticeDistributive,
    TopUnit,
    BottomUnit,
    MulAssociative,
    Identity,
    TopRightZero,
    BottomRightZero,
    TopTimesGenerator,
    BottomTimesGenerator,
    LeftDistributiveMeet,
    LeftDistributiveJoin,
    RightDistributiveMeet,
    RightDistributiveJoin,
    GeneratedByProducts,
}

impl Axiom {
    pub fn is_lattice_law(self) -> bool {
        matches!(
            self,
            Axiom::MeetIdempotent
                | Axiom::JoinIdempotent
                | Axiom::MeetCommutative
                | Axiom::JoinCommutative
                | Axiom::MeetAssociative
                | Axiom::JoinAssociative
                | Axiom::Absorption
                | Axiom::LatticeDistributive
                | Axiom::TopUnit
                | Axiom::BottomUnit
        )
    }

    pub fn is_distributivity(self) -> bool {
        matches!(
            self,
            Axiom::LatticeDistributive
                | Axiom::LeftDistributiveMeet
                | Axiom::LeftDistributiveJoin
                | Axiom::RightDistributiveMeet
                | Axiom::RightDistributiveJoin
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub operands: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at {:?}", self.axiom, self.operands)
    }
}

/// Violations found by the axiom check; at most `MAX_REPORTED` are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    pub total: usize,
}

impl AxiomReport {
    pub const MAX_REPORTED: usize = 1000;

    pub fn is_ok(&self) -> bool {
        self.total == 0
    }

    fn fail(&mut self, axiom: Axiom, operands: &[usize]) {
        self.total += 1;
        if self.violations.len() < Self::MAX_REPORTED {
            self.violations.push(Violation { axiom, operands: operands.to_vec() });
        }
    }

    /// Distinct failing axioms in first-failure order.
    pub fn failing_axioms(&self) -> Vec<Axiom> {
        let mut out = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.axiom) {
                out.push(v.axiom);
            }
        }
        out
    }
}

pub fn check_lattice_algebra_axioms(alg: &SyntacticLatticeAlgebra) -> AxiomReport {
    check_lattice_algebra_tables(&alg.tables())
}

pub fn check_lattice_algebra_tables(t: &LatticeAlgebraTables) -> AxiomReport {
    let n = t.size;
    let (m, j, p) = (&t.meet, &t.join, &t.mul);
    let (bot, top, one) = (t.bottom, t.top, t.one);
    let mut r = AxiomReport::default();
    for x in 0..n {
        if m[x][x] != x {
            r.fail(Axiom::MeetIdempotent, &[x]);
        }
        if j[x][x] != x {
            r.fail(Axiom::JoinIdempotent, &[x]);
        }
        if m[x][top] != x {
            r.fail(Axiom::TopUnit, &[x]);
        }
        if j[x][bot] != x {
            r.fail(Axiom::BottomUnit, &[x]);
        }
        if p[x][one] != x || p[one][x] != x {
            r.fail(Axiom::Identity, &[x]);
        }
        if p[x][top] != top {
            r.fail(Axiom::TopRightZero, &[x]);
        }
        if p[x][bot] != bot {
            r.fail(Axiom::BottomRightZero, &[x]);
        }
        for y in 0..n {
            if m[x][y] != m[y][x] {
                r.fail(Axiom::MeetCommutative, &[x, y]);
            }
            if j[x][y] != j[y][x] {
                r.fail(Axiom::JoinCommutative, &[x, y]);
            }
            if m[x][j[x][y]] != x || j[x][m[x][y]] != x {
                r.fail(Axiom::Absorption, &[x, y]);
            }
            for z in 0..n {
                if m[m[x][y]][z] != m[x][m[y][z]] {
                    r.fail(Axiom::MeetAssociative, &[x, y, z]);
                }
                if j[j[x][y]][z] != j[x][j[y][z]] {
                    r.fail(Axiom::JoinAssociative, &[x, y, z]);
                }
                if m[x][j[y][z]] != j[m[x][y]][m[x][z]] {
                    r.fail(Axiom::LatticeDistributive, &[x, y, z]);
                }
                if p[p[x][y]][z] != p[x][p[y][z]] {
                    r.fail(Axiom::MulAssociative, &[x, y, z]);
                }
                if p[x][m[y][z]] != m[p[x][y]][p[x][z]] {
                    r.fail(Axiom::LeftDistributiveMeet, &[x, y, z]);
                }
                if p[x][j[y][z]] != j[p[x][y]][p[x][z]] {
                    r.fail(Axiom::LeftDistributiveJoin, &[x, y, z]);
                }
            }
        }
    }
    for &g in &t.generators {
        if p[top][g] != top {
            r.fail(Axiom::TopTimesGenerator, &[g]);
        }
        if p[bot][g] != bot {
            r.fail(Axiom::BottomTimesGenerator, &[g]);
        }
        for x in 0..n {
            for y in 0..n {
                if p[m[x][y]][g] != m[p[x][g]][p[y][g]] {
                    r.fail(Axiom::RightDistributiveMeet, &[x, y, g]);
                }
                if p[j[x][y]][g] != j[p[x][g]][p[y][g]] {
                    r.fail(Axiom::RightDistributiveJoin, &[x, y, g]);
                }
            }
        }
    }
    let generated = generated_by_products(t);
    if let Some(x) = (0..n).find(|&x| !generated[x]) {
        r.fail(Axiom::GeneratedByProducts, &[x]);
    }
    r
}

/// Lattice closure of `⊤`, `⊥` and all products of generators.
fn generated_by_products(t: &LatticeAlgebraTables) -> Vec<bool> {
    let n = t.size;
    let mut seen = vec![false; n];
    let mut list = Vec::new();
    let push = |x: usize, seen: &mut Vec<bool>, list: &mut Vec<usize>| {
        if !seen[x] {
            seen[x] = true;
            list.push(x);
        }
    };
    push(t.one, &mut seen, &mut list);
    let mut i = 0;
    while i < list.len() {
        for &g in &t.generators {
            push(t.mul[list[i]][g], &mut seen, &mut list);
        }
        i += 1;
    }
    push(t.top, &mut seen, &mut list);
    push(t.bottom, &mut seen, &mut list);
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let (x, y) = (list[i], list[j]);
            push(t.meet[x][y], &mut seen, &mut list);
            push(t.join[x][y], &mut seen, &mut list);
        }
        i += 1;
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Language;

    fn lang(re: &str, letters: &str) -> Language {
        Language::new(re, letters, &Budgets::default()).unwrap()
    }

    #[test]
    fn monoid_of_a_plus_b_plus() {
        let l = lang("a+b+", "ab");
        let m = syntactic_monoid(&l.dfa, 100).unwrap();
        let witnesses: Vec<String> = m.elements().iter().map(|e| e.witness.to_string()).collect();
        assert_eq!(witnesses, ["%e", "a", "b", "ab", "ba"]);
        let (a, b, ba) = (m.element_of_word("a").unwrap(), m.element_of_word("b").unwrap(), 4);
        assert_eq!(m.multiply(a, a), a);
        assert_eq!(m.multiply(b, b), b);
        for x in 0..m.len() {
            assert_eq!(m.multiply(ba, x), ba);
            assert_eq!(m.multiply(x, ba), ba);
        }
        assert_eq!(m.omega_power(a), a);
        assert_eq!(m.omega_power(m.identity()), m.identity());
        assert_eq!(m.omega_power(ba), ba);
    }

    #[test]
    fn monoid_budget_and_omega_of_cycle() {
        let l = lang("(aaa)*", "a");
        let m = syntactic_monoid(&l.dfa, 100).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.omega_power(m.generator(0)), m.identity());
        assert_eq!(syntactic_monoid(&l.dfa, 2).unwrap_err(), Error::BudgetExceeded { what: "element", limit: 2 });
    }

    #[test]
    fn cayley_table_matches_runs() {
        let l = lang("a(b|a)*b", "ab");
        let m = syntactic_monoid(&l.dfa, 100).unwrap();
        let table = m.cayley_table();
        for e in 0..m.len() {
            for f in 0..m.len() {
                let w = format!("{}{}", m.element(e).witness.as_string(), m.element(f).witness.as_string());
                assert_eq!(table[e][f], m.element_of_word(&w).unwrap());
            }
        }
    }

    #[test]
    fn semiring_of_a_plus_b_plus() {
        let l = lang("a+b+", "ab");
        let s = syntactic_semiring(&l.table, &l.dfa, &Budgets::default()).unwrap();
        assert_eq!(s.len(), 11);
        let mut w: Vec<String> = s.elements().iter().map(|e| e.witness.to_string()).collect();
        w.sort();
        let mut expected = ["T", "%e", "a", "b", "ab", "ba", "%e^a", "%e^b", "%e^ab", "a^ab", "b^ab"];
        expected.sort();
        assert_eq!(w, expected);
        assert!(s.check_axioms().is_empty());
        let x = s.element_of(&l.table, &MeetForm::from_words(["a", "b"])).unwrap();
        let y = s.element_of(&l.table, &MeetForm::from_words(["", "ab"])).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn lattice_algebra_of_a_plus_b_plus() {
        let l = lang("a+b+", "ab");
        let alg = syntactic_lattice_algebra(&l.table, &l.dfa, &Budgets::default()).unwrap();
        assert_eq!(alg.len(), 22);
        for i in 0..alg.len() {
            for j in 0..alg.len() {
                assert_eq!(multiply_lattice_elements(&alg, i, j).unwrap(), alg.multiply(i, j));
            }
            assert_eq!(alg.multiply(i, alg.one()), i);
            assert_eq!(alg.multiply(alg.one(), i), i);
        }
    }

    #[test]
    fn empty_language_algebras() {
        let l = lang("%0", "a");
        assert_eq!(syntactic_monoid(&l.dfa, 10).unwrap().len(), 1);
        assert_eq!(syntactic_semiring(&l.table, &l.dfa, &Budgets::default()).unwrap().len(), 2);
        assert_eq!(syntactic_lattice_algebra(&l.table, &l.dfa, &Budgets::default()).unwrap().len(), 2);
    }

    /// `⊥ < 1 < ⊤` with `1` the only generator.
    fn chain() -> LatticeAlgebraTables {
        let (bot, one, top) = (0, 1, 2);
        let order = |x: usize| x;
        let meet = (0..3).map(|x| (0..3).map(|y| order(x).min(order(y))).collect()).collect();
        let join = (0..3).map(|x| (0..3).map(|y| order(x).max(order(y))).collect()).collect();
        let mul = (0..3).map(|x| (0..3).map(|y| if y == one { x } else { y }).collect()).collect();
        LatticeAlgebraTables { size: 3, meet, join, mul, generators: vec![one], bottom: bot, top, one }
    }

    #[test]
    fn chain_passes() {
        let report = check_lattice_algebra_tables(&chain());
        assert!(report.is_ok(), "{:?}", report.violations);
    }

    #[test]
    fn corrupted_join_is_reported() {
        let mut t = chain();
        t.join[0][1] = 2;
        let report = check_lattice_algebra_tables(&t);
        assert!(!report.is_ok());
        for v in &report.violations {
            assert!(v.axiom.is_lattice_law() || v.axiom.is_distributivity(), "{v}");
        }
        assert!(report.violations.contains(&Violation { axiom: Axiom::JoinCommutative, operands: vec![0, 1] }));
    }
}
