//! Symbolic action of lower triangular unipotent elements and the check of
//! triangular solvability schedules.
//!
//! For a group `prod GL_{n_j}` the element `n(u)` has ones on the diagonal
//! and the parameter `u_{j,ab}` at row `a`, column `b` (`a > b`) of factor
//! `j`. Each parameter is a polynomial variable; its index is its position
//! in [`UnipotentVars::all_vars`].

use crate::exact::Rat;
use crate::poly::Poly;
use crate::rep::{GroupSpec, RepSpec};
use crate::ring::Ring;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A lower triangular parameter `u_{factor, row, col}`, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UVar {
    pub factor: usize,
    pub row: usize,
    pub col: usize,
}

impl UVar {
    /// Parses names such as `u141` (factor 1, row 4, column 1).
    pub fn parse(name: &str) -> Option<UVar> {
        let d: Vec<usize> = name.strip_prefix('u')?.chars().map(|c| c.to_digit(10).map(|v| v as usize)).collect::<Option<_>>()?;
        match d.as_slice() {
            [f, r, c] if *f >= 1 && r > c && *c >= 1 => Some(UVar { factor: *f, row: *r, col: *c }),
            _ => None,
        }
    }
}

impl fmt::Display for UVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}{}{}", self.factor, self.row, self.col)
    }
}

/// Problems with unipotent parameters or schedules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScheduleError {
    /// The parameter does not exist for the group.
    UnknownVariable(UVar),
    /// A pivot or extra variable is pinned to zero.
    PinnedVariable(UVar),
    DuplicatePivot(UVar),
    /// A pivot is also declared as an extra variable.
    PivotIsExtra(UVar),
    DuplicateTarget(usize),
    /// The targets differ from the required set of ordinals.
    Coverage { missing: Vec<usize>, unexpected: Vec<usize> },
}

impl fmt::Display for ScheduleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleError::UnknownVariable(v) => write!(f, "unknown variable {v}"),
            ScheduleError::PinnedVariable(v) => write!(f, "variable {v} is pinned to zero"),
            ScheduleError::DuplicatePivot(v) => write!(f, "pivot {v} used twice"),
            ScheduleError::PivotIsExtra(v) => write!(f, "pivot {v} is also an extra variable"),
            ScheduleError::DuplicateTarget(o) => write!(f, "ordinal {o} targeted twice"),
            ScheduleError::Coverage { missing, unexpected } => {
                write!(f, "targets do not match: missing {missing:?}, unexpected {unexpected:?}")
            }
        }
    }
}

/// The lower triangular parameters of a group, some of them pinned to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentVars {
    group: GroupSpec,
    vars: Vec<UVar>,
    active: Vec<bool>,
}

impl UnipotentVars {
    /// All parameters active.
    pub fn new(group: &GroupSpec) -> Self {
        let mut vars = Vec::new();
        for (j, &n) in group.factor_sizes().iter().enumerate() {
            for row in 2..=n {
                for col in 1..row {
                    vars.push(UVar { factor: j + 1, row, col });
                }
            }
        }
        let active = vec![true; vars.len()];
        UnipotentVars { group: group.clone(), vars, active }
    }

    /// Parameters with `pinned` set to zero.
    pub fn with_pinned(group: &GroupSpec, pinned: &[UVar]) -> Result<Self, ScheduleError> {
        let mut v = Self::new(group);
        for p in pinned {
            let i = v.index(p)?;
            v.active[i] = false;
        }
        Ok(v)
    }

    /// Only `active` free, everything else pinned.
    pub fn with_active(group: &GroupSpec, active: &[UVar]) -> Result<Self, ScheduleError> {
        let mut v = Self::new(group);
        v.active.iter_mut().for_each(|a| *a = false);
        for p in active {
            let i = v.index(p)?;
            v.active[i] = true;
        }
        Ok(v)
    }

    pub fn all_vars(&self) -> &[UVar] {
        &self.vars
    }

    /// Polynomial variable index of a parameter.
    pub fn index(&self, v: &UVar) -> Result<usize, ScheduleError> {
        self.vars.iter().position(|w| w == v).ok_or(ScheduleError::UnknownVariable(*v))
    }

    pub fn is_active(&self, v: &UVar) -> bool {
        self.index(v).is_ok_and(|i| self.active[i])
    }

    pub fn pinned(&self) -> Vec<UVar> {
        self.vars.iter().zip(&self.active).filter(|(_, a)| !**a).map(|(v, _)| *v).collect()
    }

    /// Generic element of the form `R(u)` with entries given by `entry`.
    fn element_with<R: Ring>(&self, entry: impl Fn(usize) -> R) -> Vec<Vec<Vec<R>>> {
        let mut g: Vec<Vec<Vec<R>>> = crate::rep::identity_element(&self.group);
        for (k, v) in self.vars.iter().enumerate() {
            if self.active[k] {
                g[v.factor - 1][v.row - 1][v.col - 1] = entry(k);
            }
        }
        g
    }

    /// `n(u)` with polynomial entries.
    pub fn element(&self) -> Vec<Vec<Vec<Poly>>> {
        self.element_with(Poly::var)
    }

    /// `n(u)` at numeric values indexed like [`Self::all_vars`].
    pub fn specialize(&self, values: &[Rat]) -> Vec<Vec<Vec<Rat>>> {
        self.element_with(|k| values[k].clone())
    }
}

/// All coordinates of `n(u) r` as polynomials in the active parameters.
pub fn act_unipotent_full(rep: &RepSpec, r: &[Rat], vars: &UnipotentVars) -> Vec<Poly> {
    let x: Vec<Poly> = r.iter().map(|c| Poly::constant(c.clone())).collect();
    rep.act(&vars.element(), &x)
}

/// Coordinates of `n(u) r` at the given 1-based ordinals.
pub fn act_unipotent(rep: &RepSpec, r: &[Rat], vars: &UnipotentVars, ordinals: &[usize]) -> BTreeMap<usize, Poly> {
    let full = act_unipotent_full(rep, r, vars);
    ordinals.iter().map(|&o| (o, full[o - 1].clone())).collect()
}

/// An ordered assignment of pivot variables to target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub index: usize,
    pub pinned: Vec<UVar>,
    pub extras: Vec<UVar>,
    pub steps: Vec<(usize, UVar)>,
}

impl Schedule {
    /// Structural checks: distinct pivots and targets, no pivot among the
    /// extras, no pinned pivot or extra, and targets equal to `required`.
    pub fn validate(&self, vars: &UnipotentVars, required: &[usize]) -> Result<(), ScheduleError> {
        let extras: BTreeSet<UVar> = self.extras.iter().copied().collect();
        let mut pivots = BTreeSet::new();
        let mut targets = BTreeSet::new();
        for v in self.extras.iter().chain(self.steps.iter().map(|(_, v)| v)) {
            vars.index(v)?;
            if !vars.is_active(v) {
                return Err(ScheduleError::PinnedVariable(*v));
            }
        }
        for (o, v) in &self.steps {
            if extras.contains(v) {
                return Err(ScheduleError::PivotIsExtra(*v));
            }
            if !pivots.insert(*v) {
                return Err(ScheduleError::DuplicatePivot(*v));
            }
            if !targets.insert(*o) {
                return Err(ScheduleError::DuplicateTarget(*o));
            }
        }
        let req: BTreeSet<usize> = required.iter().copied().collect();
        if req != targets {
            return Err(ScheduleError::Coverage {
                missing: req.difference(&targets).copied().collect(),
                unexpected: targets.difference(&req).copied().collect(),
            });
        }
        Ok(())
    }
}

/// The first step whose polynomial does not have the required shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub step: usize,
    pub ordinal: usize,
    pub pivot: UVar,
    pub polynomial: String,
}

/// Outcome of [`check_schedule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleReport {
    pub index: usize,
    /// Sign of the pivot in each passing step.
    pub signs: Vec<i8>,
    pub violation: Option<Violation>,
}

impl ScheduleReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that step `i` has polynomial `+-pivot_i + Q` with `Q` depending
/// only on the extras and the pivots of earlier steps.
pub fn check_schedule(
    polys: &BTreeMap<usize, Poly>,
    schedule: &Schedule,
    vars: &UnipotentVars,
) -> Result<ScheduleReport, ScheduleError> {
    let required: Vec<usize> = polys.keys().copied().collect();
    schedule.validate(vars, &required)?;
    let mut allowed: BTreeSet<usize> = schedule.extras.iter().map(|v| vars.index(v)).collect::<Result<_, _>>()?;
    let names: Vec<String> = vars.all_vars().iter().map(|v| format!("{v}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut signs = Vec::new();
    for (step, (o, pivot)) in schedule.steps.iter().enumerate() {
        let p = &polys[o];
        let k = vars.index(pivot)?;
        let sign = [1i8, -1].into_iter().find(|&s| {
            let pv = Poly::var(k);
            let rest = if s > 0 { p.minus(&pv) } else { p.plus(&pv) };
            rest.variables().iter().all(|v| allowed.contains(v))
        });
        match sign {
            Some(s) => signs.push(s),
            None => {
                let violation = Violation { step, ordinal: *o, pivot: *pivot, polynomial: p.fmt_with(&names) };
                return Ok(ScheduleReport { index: schedule.index, signs, violation: Some(violation) });
            }
        }
        allowed.insert(k);
    }
    Ok(ScheduleReport { index: schedule.index, signs, violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;
    use proptest::prelude::*;

    fn uv(s: &str) -> UVar {
        UVar::parse(s).unwrap()
    }

    fn point(rep: &RepSpec, terms: &[(usize, i64)]) -> Vec<Rat> {
        let mut x = vec![ri(0); rep.dim()];
        for &(o, c) in terms {
            x[o - 1] = ri(c);
        }
        x
    }

    // e341 - e351 + e451 + e132 - e143 + e243 - e254
    fn r3(rep: &RepSpec) -> Vec<Rat> {
        point(rep, &[(8, 1), (9, -1), (10, 1), (12, 1), (23, -1), (26, 1), (37, -1)])
    }

    const W3: [usize; 9] = [18, 19, 20, 28, 29, 30, 38, 39, 40];

    fn schedule3() -> (Schedule, UnipotentVars) {
        let rep = RepSpec::flagship();
        let active: Vec<UVar> =
            ["u131", "u132", "u141", "u142", "u151", "u152", "u221", "u231", "u241"].iter().map(|s| uv(s)).collect();
        let vars = UnipotentVars::with_active(rep.group(), &active).unwrap();
        let steps = [
            (20, "u221"),
            (18, "u141"),
            (19, "u151"),
            (38, "u241"),
            (39, "u132"),
            (40, "u142"),
            (29, "u231"),
            (30, "u152"),
            (28, "u131"),
        ];
        let s = Schedule {
            index: 3,
            pinned: vars.pinned(),
            extras: vec![],
            steps: steps.iter().map(|&(o, v)| (o, uv(v))).collect(),
        };
        (s, vars)
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(uv("u141"), UVar { factor: 1, row: 4, col: 1 });
        assert_eq!(format!("{}", uv("u243")), "u243");
        assert_eq!(UVar::parse("u114"), None);
        assert_eq!(UVar::parse("x141"), None);
        let vars = UnipotentVars::new(RepSpec::flagship().group());
        assert_eq!(vars.all_vars().len(), 16);
        assert!(matches!(vars.index(&uv("u165")), Err(ScheduleError::UnknownVariable(_))));
    }

    #[test]
    fn displayed_component() {
        let rep = RepSpec::flagship();
        let (_, vars) = schedule3();
        let polys = act_unipotent(&rep, &r3(&rep), &vars, &W3);
        let (a, b) = (vars.index(&uv("u141")).unwrap(), vars.index(&uv("u221")).unwrap());
        assert_eq!(polys[&18], Poly::var(b).minus(&Poly::var(a)));
    }

    #[test]
    fn schedule_three_passes() {
        let rep = RepSpec::flagship();
        let (s, vars) = schedule3();
        let polys = act_unipotent(&rep, &r3(&rep), &vars, &W3);
        let rep_ = check_schedule(&polys, &s, &vars).unwrap();
        assert!(rep_.passed(), "{rep_:?}");
        assert_eq!(rep_.signs.len(), 9);
    }

    #[test]
    fn schedule_order_matters() {
        let rep = RepSpec::flagship();
        let (mut s, vars) = schedule3();
        s.steps.swap(0, 1);
        let polys = act_unipotent(&rep, &r3(&rep), &vars, &W3);
        let r = check_schedule(&polys, &s, &vars).unwrap();
        assert_eq!(r.violation.as_ref().map(|v| v.step), Some(0));
    }

    #[test]
    fn structural_errors() {
        let rep = RepSpec::flagship();
        let (s, vars) = schedule3();
        let polys = act_unipotent(&rep, &r3(&rep), &vars, &W3);
        let mut dup = s.clone();
        dup.steps[1].1 = dup.steps[0].1;
        assert_eq!(check_schedule(&polys, &dup, &vars), Err(ScheduleError::DuplicatePivot(uv("u221"))));
        let mut extra = s.clone();
        extra.extras.push(uv("u221"));
        assert_eq!(check_schedule(&polys, &extra, &vars), Err(ScheduleError::PivotIsExtra(uv("u221"))));
        let mut short = s.clone();
        short.steps.pop();
        assert!(matches!(check_schedule(&polys, &short, &vars), Err(ScheduleError::Coverage { .. })));
        let mut pinned = s;
        pinned.steps[0].1 = uv("u121");
        assert_eq!(check_schedule(&polys, &pinned, &vars), Err(ScheduleError::PinnedVariable(uv("u121"))));
    }

    #[test]
    fn identity_and_empty_cases() {
        let rep = RepSpec::flagship();
        let x = r3(&rep);
        let vars = UnipotentVars::with_active(rep.group(), &[]).unwrap();
        let full = act_unipotent_full(&rep, &x, &vars);
        for (p, c) in full.iter().zip(&x) {
            assert_eq!(*p, Poly::constant(c.clone()));
        }
        // A point at the last coordinate has no targets.
        let vars = UnipotentVars::new(rep.group());
        let polys = act_unipotent(&rep, &point(&rep, &[(40, 1)]), &vars, &[]);
        assert!(polys.is_empty());
        let s = Schedule { index: 292, pinned: vec![], extras: vec![], steps: vec![] };
        assert!(check_schedule(&polys, &s, &vars).unwrap().passed());
    }

    #[test]
    fn zero_parameters_fix_the_point() {
        let rep = RepSpec::flagship();
        let x = r3(&rep);
        let vars = UnipotentVars::new(rep.group());
        let full = act_unipotent_full(&rep, &x, &vars);
        let zero = vec![ri(0); 16];
        let at0: Vec<Rat> = full.iter().map(|p| p.eval(&zero)).collect();
        assert_eq!(at0, x);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn symbolic_matches_numeric(u in prop::collection::vec((-5i64..=5, 1i64..=4), 16)) {
            let rep = RepSpec::flagship();
            let x = r3(&rep);
            let vars = UnipotentVars::new(rep.group());
            let full = act_unipotent_full(&rep, &x, &vars);
            let vals: Vec<Rat> = u.iter().map(|&(n, d)| crate::exact::rat(n, d)).collect();
            let numeric = rep.act(&vars.specialize(&vals), &x);
            let symbolic: Vec<Rat> = full.iter().map(|p| p.eval(&vals)).collect();
            prop_assert_eq!(symbolic, numeric);
        }
    }
}
