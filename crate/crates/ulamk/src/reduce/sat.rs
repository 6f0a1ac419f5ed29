//! 3CNF encoding into two-dimensional instances.
//!
//! Each literal occurrence becomes a symbol in `[3m]`. The first dimension
//! pairs per-variable positive blocks against negative blocks in swapped
//! order, so a feasible set never keeps both polarities of a variable. The
//! second dimension lists clause blocks against their reversals, so a
//! feasible set keeps at most one symbol per clause. The optimum therefore
//! equals the clause count iff the formula is satisfiable.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{FeasibleSet, Instance};

/// A signed literal; `var` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lit {
    pub var: usize,
    pub neg: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, neg: false }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, neg: true }
    }
}

/// A CNF formula with exactly three literal occurrences per clause.
/// Duplicate literals within a clause are permitted; each occurrence is a
/// distinct symbol.
#[derive(Debug, Clone)]
pub struct CnfFormula {
    var_count: usize,
    clauses: Vec<[Lit; 3]>,
}

impl CnfFormula {
    pub fn new(var_count: usize, clauses: Vec<Vec<Lit>>) -> Result<Self> {
        let mut fixed = Vec::with_capacity(clauses.len());
        for (i, clause) in clauses.into_iter().enumerate() {
            if clause.len() != 3 {
                return Err(Error::MalformedClause {
                    index: i + 1,
                    len: clause.len(),
                });
            }
            for lit in &clause {
                if lit.var < 1 || lit.var > var_count {
                    return Err(Error::OutOfRange {
                        location: format!("clause {}", i + 1),
                        value: lit.var as u64,
                        max: var_count as u64,
                    });
                }
            }
            fixed.push([clause[0], clause[1], clause[2]]);
        }
        Ok(Self {
            var_count,
            clauses: fixed,
        })
    }

    /// DIMACS CNF subset: optional `c` comment lines, one `p cnf <vars>
    /// <clauses>` header, then one 0-terminated clause of three literals
    /// per line.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<Vec<Lit>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p ") {
                if header.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "duplicate `p` header".to_string(),
                    });
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let parsed = match fields.as_slice() {
                    ["cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or(Error::Parse {
                    line: lineno,
                    msg: format!("malformed header `{line}`"),
                })?);
                continue;
            }
            let Some((var_count, _)) = header else {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "clause before `p cnf` header".to_string(),
                });
            };
            let mut lits = Vec::new();
            let mut terminated = false;
            for tok in line.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad literal `{tok}`"),
                })?;
                if v == 0 {
                    terminated = true;
                    break;
                }
                let var = v.unsigned_abs() as usize;
                if var > var_count {
                    return Err(Error::OutOfRange {
                        location: format!("clause {}", clauses.len() + 1),
                        value: var as u64,
                        max: var_count as u64,
                    });
                }
                lits.push(Lit {
                    var,
                    neg: v < 0,
                });
            }
            if !terminated {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "clause line not 0-terminated".to_string(),
                });
            }
            if lits.len() != 3 {
                return Err(Error::MalformedClause {
                    index: clauses.len() + 1,
                    len: lits.len(),
                });
            }
            clauses.push(lits);
        }
        let Some((var_count, declared)) = header else {
            return Err(Error::Parse {
                line: 0,
                msg: "missing `p cnf` header".to_string(),
            });
        };
        if clauses.len() != declared {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header declares {declared} clauses, found {}", clauses.len()),
            });
        }
        CnfFormula::new(var_count, clauses)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Lit; 3]] {
        &self.clauses
    }

    /// Number of clauses satisfied under a full assignment
    /// (`assignment[v-1]` is the value of variable `v`).
    pub fn satisfied_count(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|clause| clause.iter().any(|l| assignment[l.var - 1] != l.neg))
            .count()
    }

    /// Truth-table satisfiability; intended for small formulas only.
    pub fn satisfiable_brute(&self) -> bool {
        assert!(self.var_count <= 25, "truth table limited to 25 variables");
        let m = self.clauses.len();
        (0u32..1 << self.var_count).any(|mask| {
            let assignment: Vec<bool> = (0..self.var_count).map(|v| mask >> v & 1 == 1).collect();
            self.satisfied_count(&assignment) == m
        })
    }
}

/// One symbol of the encoding: the `occ`-th occurrence (1-based, in clause
/// order) of variable `var` with the given polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymbolInfo {
    pub id: u32,
    pub var: usize,
    pub neg: bool,
    pub occ: usize,
}

/// The bijection between literal occurrences and `[3m]`.
///
/// Numbering: variables in ascending index; within a variable, positive
/// occurrences in clause order, then negative occurrences in clause order.
#[derive(Debug, Clone, Serialize)]
pub struct SymbolTable {
    symbols: Vec<SymbolInfo>,
    #[serde(skip)]
    clause_symbols: Vec<[u32; 3]>,
}

impl SymbolTable {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[SymbolInfo] {
        &self.symbols
    }

    pub fn info(&self, id: u32) -> Option<&SymbolInfo> {
        self.symbols.get(id as usize - 1)
    }

    /// Per clause, the three symbol ids in literal order.
    pub fn clause_symbols(&self) -> &[[u32; 3]] {
        &self.clause_symbols
    }
}

/// A partial assignment decoded from a feasible set, with the number of
/// clauses it satisfies.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub values: BTreeMap<usize, bool>,
    pub satisfied: usize,
}

/// Encodes a 3CNF formula as a two-dimensional instance over `[3m]`
/// together with the symbol table. The optimum equals `m` iff the formula
/// is satisfiable, and never exceeds `m`.
pub fn sat_to_2lfs(phi: &CnfFormula) -> Result<(Instance, SymbolTable)> {
    let m = phi.clause_count();
    if m == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut symbols = Vec::with_capacity(3 * m);
    let mut clause_symbols = vec![[0u32; 3]; m];
    let mut s1 = Vec::with_capacity(3 * m);
    let mut t1 = Vec::with_capacity(3 * m);
    let mut next_id = 1u32;
    for var in 1..=phi.var_count() {
        let mut block = |neg: bool, next_id: &mut u32, symbols: &mut Vec<SymbolInfo>| {
            let mut ids = Vec::new();
            let mut occ = 0;
            for (j, clause) in phi.clauses().iter().enumerate() {
                for (p, lit) in clause.iter().enumerate() {
                    if lit.var == var && lit.neg == neg {
                        occ += 1;
                        symbols.push(SymbolInfo {
                            id: *next_id,
                            var,
                            neg,
                            occ,
                        });
                        clause_symbols[j][p] = *next_id;
                        ids.push(*next_id);
                        *next_id += 1;
                    }
                }
            }
            ids
        };
        let positives = block(false, &mut next_id, &mut symbols);
        let negatives = block(true, &mut next_id, &mut symbols);
        s1.extend(positives.iter().chain(&negatives));
        t1.extend(negatives.iter().chain(&positives));
    }
    let s2: Vec<u32> = clause_symbols.iter().flatten().copied().collect();
    let t2: Vec<u32> = clause_symbols
        .iter()
        .flat_map(|ids| ids.iter().rev())
        .copied()
        .collect();
    let inst = Instance::from_raw(vec![s1, s2], vec![t1, t2])?;
    Ok((
        inst,
        SymbolTable {
            symbols,
            clause_symbols,
        },
    ))
}

/// Maps each kept symbol back to its literal and sets that variable to
/// satisfy it; also counts the clauses the resulting partial assignment
/// satisfies (at least the size of `fixed` when `fixed` is feasible).
pub fn decode_assignment(table: &SymbolTable, fixed: &FeasibleSet) -> Result<Assignment> {
    let mut values: BTreeMap<usize, bool> = BTreeMap::new();
    for id in fixed.iter() {
        let info = table.info(id).ok_or_else(|| Error::OutOfRange {
            location: "witness symbol".to_string(),
            value: id as u64,
            max: table.len() as u64,
        })?;
        let desired = !info.neg;
        match values.insert(info.var, desired) {
            Some(prev) if prev != desired => {
                return Err(Error::InconsistentAssignment { var: info.var });
            }
            _ => {}
        }
    }
    let satisfied = table
        .clause_symbols()
        .iter()
        .filter(|ids| {
            ids.iter().any(|&sid| {
                let info = table.info(sid).expect("table ids are dense");
                values.get(&info.var) == Some(&!info.neg)
            })
        })
        .count();
    Ok(Assignment { values, satisfied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::{brute_force_opt, enumerate_feasible};

    /// (x1 ∨ x2 ∨ ¬x3) ∧ (¬x1 ∨ x2 ∨ x3)
    fn two_clause() -> CnfFormula {
        CnfFormula::new(
            3,
            vec![
                vec![Lit::pos(1), Lit::pos(2), Lit::neg(3)],
                vec![Lit::neg(1), Lit::pos(2), Lit::pos(3)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_clause_encoding() {
        let (inst, table) = sat_to_2lfs(&two_clause()).unwrap();
        assert_eq!(inst.n(), 6);
        assert_eq!(inst.source().dim(0).labels(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(inst.target().dim(0).labels(), &[2, 1, 3, 4, 6, 5]);
        assert_eq!(inst.source().dim(1).labels(), &[1, 3, 6, 2, 4, 5]);
        assert_eq!(inst.target().dim(1).labels(), &[6, 3, 1, 5, 4, 2]);

        let kappa: Vec<(usize, bool, usize)> = table
            .symbols()
            .iter()
            .map(|s| (s.var, s.neg, s.occ))
            .collect();
        assert_eq!(
            kappa,
            vec![
                (1, false, 1),
                (1, true, 1),
                (2, false, 1),
                (2, false, 2),
                (3, false, 1),
                (3, true, 1),
            ]
        );

        // satisfiable via x2 = true, so the optimum reaches m = 2
        let opt = brute_force_opt(&inst).unwrap();
        assert_eq!(opt.size, 2);
        assert!(two_clause().satisfiable_brute());
    }

    #[test]
    fn single_clause_encoding() {
        let phi = CnfFormula::new(3, vec![vec![Lit::pos(1), Lit::pos(2), Lit::pos(3)]]).unwrap();
        let (inst, _) = sat_to_2lfs(&phi).unwrap();
        assert_eq!(inst.source().dim(0).labels(), &[1, 2, 3]);
        assert_eq!(inst.target().dim(0).labels(), &[1, 2, 3]);
        assert_eq!(inst.source().dim(1).labels(), &[1, 2, 3]);
        assert_eq!(inst.target().dim(1).labels(), &[3, 2, 1]);
        assert_eq!(brute_force_opt(&inst).unwrap().size, 1);
    }

    #[test]
    fn optimum_bounded_by_clause_count() {
        // unsatisfiable: (x1 ∨ x1 ∨ x1) ∧ (¬x1 ∨ ¬x1 ∨ ¬x1)
        let phi = CnfFormula::new(
            1,
            vec![
                vec![Lit::pos(1), Lit::pos(1), Lit::pos(1)],
                vec![Lit::neg(1), Lit::neg(1), Lit::neg(1)],
            ],
        )
        .unwrap();
        assert!(!phi.satisfiable_brute());
        let (inst, _) = sat_to_2lfs(&phi).unwrap();
        let opt = brute_force_opt(&inst).unwrap();
        assert!(opt.size < 2);
        assert_eq!(opt.size, 1);
    }

    #[test]
    fn decode_examples() {
        let (_, table) = sat_to_2lfs(&two_clause()).unwrap();
        let a = decode_assignment(&table, &FeasibleSet::from_members([3, 4])).unwrap();
        assert_eq!(a.values.get(&2), Some(&true));
        assert_eq!(a.values.len(), 1);
        assert_eq!(a.satisfied, 2);

        let empty = decode_assignment(&table, &FeasibleSet::empty()).unwrap();
        assert!(empty.values.is_empty());
        assert_eq!(empty.satisfied, 0);

        let phi = CnfFormula::new(3, vec![vec![Lit::pos(1), Lit::pos(2), Lit::pos(3)]]).unwrap();
        let (_, table) = sat_to_2lfs(&phi).unwrap();
        let a = decode_assignment(&table, &FeasibleSet::from_members([1])).unwrap();
        assert_eq!(a.values.get(&1), Some(&true));
        assert_eq!(a.satisfied, 1);
    }

    #[test]
    fn no_optimal_witness_mixes_polarities() {
        let (inst, table) = sat_to_2lfs(&two_clause()).unwrap();
        let opt = brute_force_opt(&inst).unwrap().size;
        for set in enumerate_feasible(&inst).unwrap() {
            if set.len() != opt {
                continue;
            }
            let mut seen: BTreeMap<usize, bool> = BTreeMap::new();
            for id in set.iter() {
                let info = table.info(id).unwrap();
                if let Some(prev) = seen.insert(info.var, info.neg) {
                    assert_eq!(prev, info.neg, "witness {set:?} mixes polarities");
                }
            }
        }
    }

    #[test]
    fn decode_satisfies_at_least_witness_size() {
        let (inst, table) = sat_to_2lfs(&two_clause()).unwrap();
        for set in enumerate_feasible(&inst).unwrap() {
            let a = decode_assignment(&table, &set).unwrap();
            assert!(a.satisfied >= set.len());
        }
    }

    #[test]
    fn dimacs_parsing() {
        let text = "c example\np cnf 3 2\n1 2 -3 0\n-1 2 3 0\n";
        let phi = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(phi.var_count(), 3);
        assert_eq!(phi.clause_count(), 2);
        assert_eq!(phi.clauses()[0][2], Lit::neg(3));

        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 2 1\n1 2 0\n"),
            Err(Error::MalformedClause { index: 1, len: 2 })
        ));
        assert!(matches!(
            CnfFormula::parse_dimacs("1 2 3 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 2 1\n1 2 3 0\n"),
            Err(Error::OutOfRange { value: 3, .. })
        ));
    }

    #[test]
    fn symbol_table_sidecar_shape() {
        let (_, table) = sat_to_2lfs(&two_clause()).unwrap();
        let json = serde_json::to_string(&table).unwrap();
        assert!(json.starts_with(r#"{"symbols":[{"id":1,"var":1,"neg":false,"occ":1}"#));
    }
}
