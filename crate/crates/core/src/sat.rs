//! 3-CNF formulas, DIMACS I/O, and exhaustive satisfiability oracles.

use std::fmt;
use std::path::Path;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default bound on the number of variables the exhaustive oracles accept.
pub const DEFAULT_SOLVE_CAP: usize = 20;

/// Signed variable index: `3` is `v3`, `-3` is `¬v3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal(i32);

impl Literal {
    pub fn new(raw: i32) -> Result<Self> {
        if raw == 0 {
            return Err(Error::Formula("literal 0 is not a variable".into()));
        }
        Ok(Literal(raw))
    }

    /// 1-based variable index.
    pub fn var(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn raw(self) -> i32 {
        self.0
    }

    pub fn holds(self, a: &Assignment) -> bool {
        a.value(self.var()) == self.is_positive()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "v{}", self.var())
        } else {
            write!(f, "¬v{}", self.var())
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for (j, raw) in clauses.into_iter().enumerate() {
            let mut clause = [Literal(1); 3];
            for (k, &r) in raw.iter().enumerate() {
                let lit = Literal::new(r)
                    .map_err(|e| Error::Formula(format!("clause {}: {e}", j + 1)))?;
                if lit.var() > num_vars {
                    return Err(Error::Formula(format!(
                        "clause {}: variable {} exceeds {num_vars}",
                        j + 1,
                        lit.var()
                    )));
                }
                clause[k] = lit;
            }
            out.push(clause);
        }
        Ok(CnfFormula {
            num_vars,
            clauses: out,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// True when no literal is negated.
    pub fn is_positive(&self) -> bool {
        self.clauses.iter().flatten().all(|l| l.is_positive())
    }

    /// True when no clause mentions a variable twice.
    pub fn has_distinct_clause_vars(&self) -> bool {
        self.clauses
            .iter()
            .all(|[a, b, c]| a.var() != b.var() && a.var() != c.var() && b.var() != c.var())
    }

    fn check_assignment(&self, a: &Assignment) -> Result<()> {
        if a.len() != self.num_vars {
            return Err(Error::AssignmentLength {
                expected: self.num_vars,
                found: a.len(),
            });
        }
        Ok(())
    }

    /// Every clause has at least one true literal.
    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        self.check_assignment(a)?;
        Ok(self.clauses.iter().all(|c| c.iter().any(|l| l.holds(a))))
    }

    /// Every clause has exactly one true variable, counting distinct
    /// variables. Only defined for positive formulas.
    pub fn eval_1in3(&self, a: &Assignment) -> Result<bool> {
        self.check_assignment(a)?;
        if !self.is_positive() {
            return Err(Error::Precondition(
                "1-in-3 evaluation needs a positive formula".into(),
            ));
        }
        Ok(self.clauses.iter().all(|c| {
            let mut vars: Vec<usize> = c.iter().map(|l| l.var()).collect();
            vars.sort_unstable();
            vars.dedup();
            vars.iter().filter(|&&v| a.value(v)).count() == 1
        }))
    }

    /// First satisfying assignment in binary counting order.
    pub fn solve(&self) -> Result<Option<Assignment>> {
        self.solve_capped(DEFAULT_SOLVE_CAP)
    }

    pub fn solve_capped(&self, cap: usize) -> Result<Option<Assignment>> {
        self.first_assignment(cap, |a| self.eval(a))
    }

    /// First 1-in-3 satisfying assignment in binary counting order.
    pub fn solve_1in3(&self) -> Result<Option<Assignment>> {
        self.solve_1in3_capped(DEFAULT_SOLVE_CAP)
    }

    pub fn solve_1in3_capped(&self, cap: usize) -> Result<Option<Assignment>> {
        if !self.is_positive() {
            return Err(Error::Precondition(
                "1-in-3 solving needs a positive formula".into(),
            ));
        }
        self.first_assignment(cap, |a| self.eval_1in3(a))
    }

    fn first_assignment(
        &self,
        cap: usize,
        accept: impl Fn(&Assignment) -> Result<bool>,
    ) -> Result<Option<Assignment>> {
        let n = self.num_vars;
        if n > cap || n >= 64 {
            return Err(Error::CapExceeded { vars: n, cap });
        }
        for index in 0..1u64 << n {
            let a = Assignment::from_index(n, index);
            if accept(&a)? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&l.raw().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF. Clauses may span lines; every clause must have
    /// exactly three literals and the clause count must match the header.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<[i32; 3]> = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        let mut current_start = 0;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line == "%" {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(lineno, "second problem line"));
                }
                let f: Vec<&str> = line.split_whitespace().collect();
                let parsed = match f.as_slice() {
                    ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                    _ => None,
                };
                header =
                    Some(parsed.ok_or_else(|| {
                        Error::parse(lineno, "expected `p cnf <vars> <clauses>`")
                    })?);
                continue;
            }
            let Some((n, _)) = header else {
                return Err(Error::parse(lineno, "clause before `p cnf` header"));
            };
            for tok in line.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad literal {tok:?}")))?;
                if current.is_empty() {
                    current_start = lineno;
                }
                if lit == 0 {
                    let index = clauses.len() + 1;
                    let clause: [i32; 3] = current.as_slice().try_into().map_err(|_| {
                        Error::parse(
                            current_start,
                            format!("clause {index} has {} literals, expected 3", current.len()),
                        )
                    })?;
                    clauses.push(clause);
                    current.clear();
                } else if lit.unsigned_abs() as usize > n {
                    return Err(Error::parse(
                        lineno,
                        format!("literal {lit} exceeds {n} variables"),
                    ));
                } else {
                    current.push(lit);
                }
            }
        }
        let (n, m) = header.ok_or_else(|| Error::parse(1, "missing `p cnf` header"))?;
        if !current.is_empty() {
            return Err(Error::parse(
                current_start,
                format!("clause {} is not terminated by 0", clauses.len() + 1),
            ));
        }
        if clauses.len() != m {
            return Err(Error::Formula(format!(
                "header declares {m} clauses, found {}",
                clauses.len()
            )));
        }
        CnfFormula::new(n, clauses)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} ∨ {} ∨ {})", c[0], c[1], c[2]))
            .collect();
        if parts.is_empty() {
            f.write_str("⊤")
        } else {
            f.write_str(&parts.join(" ∧ "))
        }
    }
}

pub fn read_dimacs(path: impl AsRef<Path>) -> Result<CnfFormula> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    CnfFormula::parse_dimacs(&text)
}

pub fn write_dimacs(formula: &CnfFormula, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, formula.to_dimacs()).map_err(|e| Error::io(path, e))
}

/// Truth values for `v1..vn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    /// Assignment number `index` in binary counting order: bit `i - 1` of
    /// `index` is the value of `v_i`.
    pub fn from_index(n: usize, index: u64) -> Self {
        Assignment((0..n).map(|i| index >> i & 1 == 1).collect())
    }

    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&bits)
    }
}

/// `m` clauses over `n` variables, each with three distinct variables drawn
/// uniformly and uniform signs unless `positive_only`. Fully determined by
/// `seed`.
pub fn random_formula(n: usize, m: usize, seed: u64, positive_only: bool) -> Result<CnfFormula> {
    if n < 3 || m < 1 {
        return Err(Error::Precondition(format!(
            "random formulas need n >= 3 and m >= 1, got n={n} m={m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let vars = sample(&mut rng, n, 3);
            let mut clause = [0i32; 3];
            for (slot, v) in clause.iter_mut().zip(vars.iter()) {
                let lit = v as i32 + 1;
                *slot = if positive_only || rng.gen_bool(0.5) {
                    lit
                } else {
                    -lit
                };
            }
            clause
        })
        .collect();
    CnfFormula::new(n, clauses)
}
