//! Command dispatch over an environment of declared objects.

use std::collections::BTreeMap;

use serde_json::{json, Value as Json};

use lcass_core::decomp::{
    associated_primes_seeded, ehv_candidates, is_associated_oracle, minimal_primes_seeded, AssSet,
    PrimeIdeal,
};
use lcass_core::dimdepth::{avoid_primes, depth_k, depth_k_via_ext, local_ass, local_dim, Depth};
use lcass_core::fgmod::{ext, ext_range, free_resolution, hom_from_presentation, Module};
use lcass_core::graded::{
    common_sequence, graded_component, make_family, stabilize_ass, stabilize_depth_k,
    stabilize_theorem_sets, FamilyKind, GradedAlgebraSpec, GradedModulePresentation, Sampling,
    StabValue, StabilizationReport,
};
use lcass_core::groebner::Ideal;
use lcass_core::polycore::{Poly, Ring};
use lcass_core::theorems::{
    ass_lch_formula, ass_top_lch, bn_star_set, ext_ass_layers, ext_ass_sets,
    power_invariance_check, ExtIdealSpec,
};
use lcass_core::{Error, Result};

use crate::check::{bind, make_ring, signature, ParamKind};
use crate::syntax::{
    ClauseValue, Command, Decl, GradedDef, ModuleExpr, PolyText, Pos, Value, Verb,
};

/// Run-wide settings; command clauses override the sampling ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub window: usize,
    pub range: (usize, usize),
    pub t_range: (u32, u32),
    pub exps_range: (u32, u32),
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 42,
            window: 3,
            range: (0, 12),
            t_range: (1, 3),
            exps_range: (1, 2),
        }
    }
}

impl Settings {
    pub fn to_json(&self) -> Json {
        json!({
            "seed": self.seed,
            "window": self.window,
            "range": [self.range.0, self.range.1],
            "t_range": [self.t_range.0, self.t_range.1],
            "exps_range": [self.exps_range.0, self.exps_range.1],
        })
    }
}

#[derive(Default)]
pub struct Env {
    rings: BTreeMap<String, Ring>,
    ideals: BTreeMap<String, Ideal>,
    modules: BTreeMap<String, Module>,
    graded: BTreeMap<String, GradedModulePresentation>,
    ints: BTreeMap<String, i64>,
    active: Option<Ring>,
}

pub fn prime_text(p: &lcass_core::decomp::PrimeIdeal) -> String {
    if p.ideal.is_zero() {
        "(0)".into()
    } else {
        p.to_string()
    }
}

pub fn set_json(s: &AssSet) -> Json {
    Json::Array(s.iter().map(|p| Json::String(prime_text(p))).collect())
}

pub fn depth_json(d: &Depth) -> Json {
    match d {
        Depth::Finite(r) => json!(r),
        Depth::Infinite => json!("infinity"),
    }
}

fn polys_json(ps: &[Poly]) -> Json {
    Json::Array(ps.iter().map(|p| Json::String(p.to_string())).collect())
}

fn ideal_json(i: &Ideal) -> Json {
    Json::Array(i.canonical_gens().into_iter().map(Json::String).collect())
}

fn module_json(m: &Module) -> Json {
    json!({ "rank": m.rank(), "matrix": m.matrix_text(), "is_zero": m.is_zero() })
}

fn stab_value_json(v: &StabValue) -> Json {
    match v {
        StabValue::Set(s) => set_json(s),
        StabValue::Depth(d) => depth_json(d),
        StabValue::Declined(why) => json!({ "declined": why }),
    }
}

fn report_json(r: &StabilizationReport) -> Json {
    json!({
        "quantity": r.quantity,
        "values": r.values.iter().map(|(n, v)| json!({ "n": n, "value": stab_value_json(v) })).collect::<Vec<_>>(),
        "stable_value": r.stable_value.as_ref().map_or(Json::Null, stab_value_json),
        "onset": r.onset,
        "window": r.window,
        "verdict": r.verdict.to_string(),
        "seed": r.seed,
    })
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedInput(msg.into())
}

/// Resolved arguments of one command.
struct Args<'a> {
    env: &'a Env,
    ring: Option<Ring>,
    vals: Vec<Option<Value>>,
    names: Vec<&'static str>,
}

impl Args<'_> {
    fn slot(&self, name: &str) -> Option<&Value> {
        self.names
            .iter()
            .position(|n| *n == name)
            .and_then(|i| self.vals[i].as_ref())
    }

    fn req(&self, name: &str) -> Result<&Value> {
        self.slot(name)
            .ok_or_else(|| malformed(format!("missing argument {name}")))
    }

    fn int_value(&self, v: &Value) -> Result<i64> {
        match v {
            Value::Int(n) => Ok(*n),
            Value::Ident(n) => self
                .env
                .ints
                .get(n)
                .copied()
                .ok_or_else(|| malformed(format!("{n} is not an integer"))),
            _ => Err(malformed(format!("{v} is not an integer"))),
        }
    }

    fn int(&self, name: &str) -> Result<i64> {
        self.int_value(self.req(name)?)
    }

    fn opt_int(&self, name: &str) -> Result<Option<i64>> {
        self.slot(name).map(|v| self.int_value(v)).transpose()
    }

    fn uint(&self, name: &str) -> Result<usize> {
        let v = self.int(name)?;
        usize::try_from(v).map_err(|_| malformed(format!("{name} = {v} must be non-negative")))
    }

    fn k(&self) -> Result<i32> {
        let v = self.int("k")?;
        i32::try_from(v).map_err(|_| malformed(format!("k = {v} out of range")))
    }

    fn exps(&self, name: &str) -> Result<Option<Vec<u32>>> {
        let Some(Value::List(xs)) = self.slot(name) else {
            return Ok(None);
        };
        xs.iter()
            .map(|x| {
                let v = self.int_value(x)?;
                u32::try_from(v)
                    .map_err(|_| malformed(format!("exponent {v} must be non-negative")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn ideal(&self, name: &str) -> Result<Ideal> {
        match self.req(name)? {
            Value::Ident(n) => self
                .env
                .ideals
                .get(n)
                .cloned()
                .ok_or_else(|| malformed(format!("{n} is not an ideal"))),
            v => Err(malformed(format!("{v} is not an ideal"))),
        }
    }

    fn module(&self, name: &str) -> Result<Module> {
        match self.req(name)? {
            Value::Ident(n) => self.env.module_expr(&ModuleExpr::Name(n.clone())),
            Value::Module(m) => self.env.module_expr(m),
            v => Err(malformed(format!("{v} is not a module"))),
        }
    }

    fn family(&self, name: &str) -> Result<&GradedModulePresentation> {
        match self.req(name)? {
            Value::Ident(n) => self
                .env
                .graded
                .get(n)
                .ok_or_else(|| malformed(format!("{n} is not a graded family"))),
            v => Err(malformed(format!("{v} is not a graded family"))),
        }
    }

    fn polys(&self, name: &str) -> Result<Vec<Poly>> {
        let ring = self
            .ring
            .clone()
            .or_else(|| self.env.active.clone())
            .ok_or_else(|| malformed("no ring"))?;
        let Value::List(xs) = self.req(name)? else {
            return Err(malformed(format!("{name} must be a list")));
        };
        xs.iter().map(|x| ring.parse_poly(&x.to_string())).collect()
    }
}

fn range_of(c: &Command, key: &str) -> Option<(i64, i64)> {
    c.clauses
        .iter()
        .rev()
        .find(|cl| cl.key == key)
        .and_then(|cl| match cl.value {
            ClauseValue::Range(a, b) => Some((a, b)),
            ClauseValue::Int(_) => None,
        })
}

fn positive_range(c: &Command, key: &str, default: (u32, u32)) -> Result<Vec<u32>> {
    let (a, b) = range_of(c, key).map_or((default.0 as i64, default.1 as i64), |r| r);
    if a < 1 || b < a {
        return Err(malformed(format!(
            "{key} range {a}..{b} must be a nonempty range of positive integers"
        )));
    }
    Ok((a as u32..=b as u32).collect())
}

fn sampling(c: &Command, s: &Settings) -> Result<Sampling> {
    let (lo, hi) = range_of(c, "range").map_or((s.range.0 as i64, s.range.1 as i64), |r| r);
    let window = c
        .clauses
        .iter()
        .rev()
        .find_map(|cl| match (cl.key.as_str(), &cl.value) {
            ("window", ClauseValue::Int(w)) => Some(*w),
            _ => None,
        })
        .unwrap_or(s.window as i64);
    if lo < 0 || hi < 0 || window < 0 {
        return Err(malformed("range and window must be non-negative"));
    }
    Sampling::new(lo as usize, hi as usize, window as usize)
}

/// All tuples in `[lo, hi]^s`.
fn tuples(s: usize, values: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |&v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

impl Env {
    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.get(name)
    }

    pub fn module(&self, name: &str) -> Option<&Module> {
        self.modules.get(name)
    }

    pub fn graded(&self, name: &str) -> Option<&GradedModulePresentation> {
        self.graded.get(name)
    }

    /// Declared ideal, module and graded-family names, sorted.
    pub fn names(&self) -> (Vec<&str>, Vec<&str>, Vec<&str>) {
        (
            self.ideals.keys().map(String::as_str).collect(),
            self.modules.keys().map(String::as_str).collect(),
            self.graded.keys().map(String::as_str).collect(),
        )
    }

    fn active(&self) -> Result<Ring> {
        self.active
            .clone()
            .ok_or_else(|| malformed("no ring has been declared"))
    }

    fn parse_polys(ring: &Ring, ps: &[PolyText]) -> Result<Vec<Poly>> {
        ps.iter().map(|p| ring.parse_poly(&p.0)).collect()
    }

    fn matrix(ring: &Ring, rows: &[Vec<PolyText>]) -> Result<Vec<Vec<Poly>>> {
        rows.iter().map(|r| Env::parse_polys(ring, r)).collect()
    }

    pub fn module_expr(&self, m: &ModuleExpr) -> Result<Module> {
        match m {
            ModuleExpr::Name(n) => {
                if let Some(m) = self.modules.get(n) {
                    Ok(m.clone())
                } else if let Some(r) = self.rings.get(n) {
                    Ok(Module::free(r, 1))
                } else {
                    Err(malformed(format!("{n} is not a module")))
                }
            }
            ModuleExpr::Coker(rows) => {
                let ring = self.active()?;
                Module::from_rows(&ring, Env::matrix(&ring, rows)?)
            }
            ModuleExpr::Quotient { ring, ideal } => {
                let r = self
                    .rings
                    .get(ring)
                    .ok_or_else(|| malformed(format!("{ring} is not a ring")))?;
                let i = self
                    .ideals
                    .get(ideal)
                    .ok_or_else(|| malformed(format!("{ideal} is not an ideal")))?;
                r.ensure_same(i.ring(), "quotient")?;
                Ok(Module::cyclic(i))
            }
            ModuleExpr::Free { ring, rank } => {
                let r = self
                    .rings
                    .get(ring)
                    .ok_or_else(|| malformed(format!("{ring} is not a ring")))?;
                Ok(Module::free(r, *rank as usize))
            }
        }
    }

    /// Evaluates a declaration; the result is a short summary for the report.
    pub fn declare(&mut self, d: &Decl) -> Result<()> {
        match d {
            Decl::Ring { name, field, vars } => {
                let r = make_ring(field, vars)?;
                self.active = Some(r.clone());
                self.rings.insert(name.clone(), r);
            }
            Decl::Ideal { name, gens } => {
                let ring = self.active()?;
                let i = Ideal::new(&ring, Env::parse_polys(&ring, gens)?)?;
                self.ideals.insert(name.clone(), i);
            }
            Decl::Module { name, def } => {
                let m = self.module_expr(def)?;
                self.modules.insert(name.clone(), m);
            }
            Decl::Graded { name, def } => {
                let g = match def {
                    GradedDef::Rees { ideal, module } => {
                        let i = self
                            .ideals
                            .get(ideal)
                            .ok_or_else(|| malformed(format!("{ideal} is not an ideal")))?;
                        make_family(FamilyKind::Rees, i, &self.module_expr(module)?)?
                    }
                    GradedDef::Custom {
                        vars,
                        degrees,
                        matrix,
                        algebra,
                    } => {
                        let base = self.active()?;
                        let alg0 = GradedAlgebraSpec::polynomial(&base, vars)?;
                        let total = alg0.total().clone();
                        let alg = GradedAlgebraSpec::new(
                            &base,
                            vars,
                            Env::parse_polys(&total, algebra)?,
                        )?;
                        let rows = Env::matrix(&total, matrix)?;
                        let ncols = rows.first().map_or(0, Vec::len);
                        let cols = (0..ncols)
                            .map(|c| rows.iter().map(|r| r[c].clone()).collect())
                            .collect();
                        let degrees = degrees
                            .iter()
                            .map(|&d| {
                                u32::try_from(d)
                                    .map_err(|_| malformed(format!("degree {d} too large")))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        let g = GradedModulePresentation::new(alg, degrees, cols)?;
                        make_family(
                            FamilyKind::Custom(g),
                            &Ideal::zero(&base),
                            &Module::free(&base, 0),
                        )?
                    }
                };
                self.graded.insert(name.clone(), g);
            }
            Decl::Int { name, value } => {
                self.ints.insert(name.clone(), *value);
            }
        }
        Ok(())
    }

    fn args(&self, c: &Command) -> Result<Args<'_>> {
        let vals = bind(c, Pos::default()).map_err(|e| malformed(e.message))?;
        let params = signature(&c.head);
        let mut ring = None;
        for (p, v) in params.iter().zip(&vals) {
            let r = match (p.kind, v) {
                (ParamKind::Ideal, Some(Value::Ident(n))) => {
                    self.ideals.get(n).map(|i| i.ring().clone())
                }
                (ParamKind::Graded, Some(Value::Ident(n))) => {
                    self.graded.get(n).map(|g| g.algebra().base().clone())
                }
                (ParamKind::Module, Some(Value::Ident(n))) => self
                    .module_expr(&ModuleExpr::Name(n.clone()))
                    .ok()
                    .map(|m| m.ring().clone()),
                (ParamKind::Module, Some(Value::Module(m))) => {
                    self.module_expr(m).ok().map(|m| m.ring().clone())
                }
                _ => None,
            };
            if ring.is_none() {
                ring = r;
            }
        }
        Ok(Args {
            env: self,
            ring,
            vals,
            names: params.iter().map(|p| p.name).collect(),
        })
    }

    /// Runs one command.
    pub fn run(&self, c: &Command, s: &Settings) -> Result<Json> {
        let a = self.args(c)?;
        let seed = s.seed;
        let head: Vec<&str> = c.head.iter().map(String::as_str).collect();
        match (c.verb, head.as_slice()) {
            (Verb::Compute, ["gb"]) => Ok(json!({ "basis": ideal_json(&a.ideal("ideal")?) })),
            (Verb::Compute, ["minprimes"]) => {
                Ok(json!({ "primes": set_json(&minimal_primes_seeded(&a.ideal("ideal")?, seed)?) }))
            }
            (Verb::Compute, ["assprimes"]) => {
                let ass = associated_primes_seeded(&a.module("module")?, seed)?;
                Ok(json!({ "primes": set_json(&ass), "local": set_json(&ass.local()) }))
            }
            (Verb::Compute, ["ann"]) => {
                Ok(json!({ "annihilator": ideal_json(&a.module("module")?.annihilator()) }))
            }
            (Verb::Compute, ["dim"]) => {
                let m = a.module("module")?;
                Ok(json!({ "dim": m.dim(), "local_dim": local_dim(&m)? }))
            }
            (Verb::Compute, ["resolution"]) => {
                let m = a.module("module")?;
                let len = match a.opt_int("length")? {
                    Some(l) => {
                        usize::try_from(l).map_err(|_| malformed("length must be non-negative"))?
                    }
                    None => m.ring().nvars() + 1,
                };
                let res = free_resolution(&m, len);
                let ranks: Vec<usize> = (0..=res.length()).map(|i| res.rank(i)).collect();
                Ok(json!({ "ranks": ranks, "is_complex": res.is_complex() }))
            }
            (Verb::Compute, ["ext"]) => {
                let e = ext(a.uint("j")?, &a.module("m")?, &a.module("n")?)?;
                Ok(
                    json!({ "index": e.index, "module": module_json(&e.module), "ass": set_json(&local_ass(&e.module)?) }),
                )
            }
            (Verb::Compute, ["depthk"]) => {
                let d = depth_k(&a.ideal("ideal")?, &a.module("n")?, a.k()?, seed)?;
                Ok(json!({ "depth": depth_json(&d.value), "witness": polys_json(&d.witness) }))
            }
            (Verb::Compute, ["asslch"]) => {
                let r = ass_lch_formula(
                    &a.ideal("ideal")?,
                    &a.module("m")?,
                    &a.module("n")?,
                    a.k()?,
                    a.uint("l")?,
                    seed,
                )?;
                Ok(json!({
                    "k": r.k,
                    "l": r.l,
                    "i_m": ideal_json(&r.i_m),
                    "depth": depth_json(&r.depth.value),
                    "depth_witness": polys_json(&r.depth.witness),
                    "witness": polys_json(&r.witness),
                    "sets_by_j": r.sets_by_j.iter().map(set_json).collect::<Vec<_>>(),
                    "union": set_json(&r.union),
                    "unproven_regime": r.unproven_regime,
                }))
            }
            (Verb::Compute, ["toplch"]) => {
                let r = ass_top_lch(&a.ideal("ideal")?, &a.module("m")?, &a.module("n")?, seed)?;
                Ok(
                    json!({ "r": r.r, "i_m": ideal_json(&r.i_m), "witness": polys_json(&r.witness), "set": set_json(&r.set) }),
                )
            }
            (Verb::Compute, ["extass"]) => {
                let i = a.ideal("ideal")?;
                let spec = match a.exps("exps")? {
                    Some(exps) => ExtIdealSpec::GeneratorPowers {
                        gens: i.gens().to_vec(),
                        exps,
                    },
                    None => {
                        let t = a.opt_int("t")?.unwrap_or(1);
                        let t = u32::try_from(t)
                            .map_err(|_| malformed(format!("t = {t} must be positive")))?;
                        ExtIdealSpec::Power { ideal: i, t }
                    }
                };
                let (n, k, l) = (a.module("n")?, a.k()?, a.uint("l")?);
                let union = ext_ass_sets(&spec, &n, k, l, seed)?;
                let layers = ext_ass_layers(&spec, &n, k, l)?;
                Ok(
                    json!({ "union": set_json(&union), "layers": layers.iter().map(set_json).collect::<Vec<_>>() }),
                )
            }
            (Verb::Compute, ["powerinv"]) => {
                let exps = a.exps("exps")?.unwrap_or_default();
                let r = power_invariance_check(&a.polys("seq")?, &a.module("n")?, a.k()?, &exps)?;
                let with_max = r.with_maximal.as_ref().map_or(Json::Null, |(p, q, eq)| {
                    json!({ "powered": set_json(p), "plain": set_json(q), "equal": eq })
                });
                Ok(json!({
                    "k": r.k,
                    "exponents": r.exponents,
                    "powered": set_json(&r.powered),
                    "plain": set_json(&r.plain),
                    "equal": r.equal,
                    "with_maximal": with_max,
                }))
            }
            (Verb::Compute, ["starset"]) => {
                let ts = positive_range(c, "t", s.t_range)?;
                let permutable = a.opt_int("permutable")?.unwrap_or(0) != 0;
                let r = bn_star_set(
                    &a.polys("seq")?,
                    &a.module("n")?,
                    &a.ideal("ideal")?,
                    a.k()?,
                    a.uint("j")?,
                    &ts,
                    permutable,
                )?;
                Ok(json!({
                    "j": r.j,
                    "t_values": ts,
                    "star": set_json(&r.star),
                    "ext_union": set_json(&r.ext_union),
                    "contained": r.contained,
                    "permutable": r.permutable,
                }))
            }
            (Verb::Compute, ["avoid"]) => {
                let Value::List(xs) = a.req("primes")? else {
                    return Err(malformed("primes must be a list"));
                };
                let mut primes = Vec::new();
                for x in xs {
                    let Value::Ident(n) = x else {
                        return Err(malformed(format!("{x} is not an ideal")));
                    };
                    let p = self
                        .ideals
                        .get(n)
                        .ok_or_else(|| malformed(format!("{n} is not an ideal")))?;
                    primes.push(PrimeIdeal {
                        ideal: p.clone(),
                        verified: false,
                        dim: p.dim(),
                    });
                }
                let x = avoid_primes(&a.ideal("ideal")?, &primes, seed)?;
                Ok(json!({ "element": x.to_string() }))
            }
            (Verb::Compute, ["component"]) => {
                let m = graded_component(a.family("family")?, a.uint("n")?);
                Ok(json!({ "module": module_json(&m), "ass": set_json(&local_ass(&m)?) }))
            }
            (Verb::Compute, ["commonseq"]) => {
                let cs = common_sequence(
                    a.family("family")?,
                    &a.ideal("ideal")?,
                    a.k()?,
                    sampling(c, s)?,
                    seed,
                )?;
                Ok(json!({
                    "sequence": polys_json(&cs.sequence),
                    "r": cs.r,
                    "onset": cs.onset,
                    "table": cs.table.iter().map(|(n, ch)| json!({
                        "n": n,
                        "holds": ch.holds,
                        "failing_index": ch.failing_index,
                    })).collect::<Vec<_>>(),
                    "valid_past_onset": cs.valid_past_onset,
                }))
            }
            (Verb::Compute, ["stabilize", "ass"]) => Ok(report_json(&stabilize_ass(
                a.family("family")?,
                sampling(c, s)?,
                seed,
            )?)),
            (Verb::Compute, ["stabilize", "depthk"]) => {
                let r = stabilize_depth_k(
                    a.family("family")?,
                    &a.ideal("ideal")?,
                    a.k()?,
                    sampling(c, s)?,
                    seed,
                )?;
                Ok(report_json(&r))
            }
            (Verb::Compute, ["stabilize", "asslch"]) => {
                let r = stabilize_theorem_sets(
                    a.family("family")?,
                    &a.ideal("ideal")?,
                    &a.module("m")?,
                    a.k()?,
                    a.uint("l")?,
                    sampling(c, s)?,
                    seed,
                )?;
                let mut out = report_json(&r.report);
                out["rows"] = Json::Array(
                    r.rows
                        .iter()
                        .map(|row| {
                            json!({
                                "n": row.n,
                                "depth": depth_json(&row.depth),
                                "unproven_regime": row.unproven_regime,
                                "ext_set": row.ext_set.as_ref().map_or(Json::Null, set_json),
                                "ext_agrees": row.ext_agrees,
                                "top_set": row.top_set.as_ref().map_or(Json::Null, set_json),
                            })
                        })
                        .collect(),
                );
                Ok(out)
            }
            (Verb::Check, ["oracle", "asslch", "vs", "ext"]) => self.check_oracle(c, &a, s),
            (Verb::Check, ["oracle", "ass"]) => {
                let m = a.module("module")?;
                let ass = associated_primes_seeded(&m, seed)?;
                let cands = ehv_candidates(&m, seed)?;
                let mut kept = Vec::new();
                for p in cands.iter() {
                    if is_associated_oracle(p, &m)? {
                        kept.push(p.clone());
                    }
                }
                let oracle = AssSet::new(kept);
                Ok(json!({
                    "ehv": set_json(&ass),
                    "candidates": set_json(&cands),
                    "oracle": set_json(&oracle),
                    "equal": ass == oracle,
                }))
            }
            (Verb::Check, ["depth"]) => {
                let (i, n, k) = (a.ideal("ideal")?, a.module("n")?, a.k()?);
                let greedy = depth_k(&i, &n, k, seed)?.value;
                let via = depth_k_via_ext(&i, &n, k)?;
                Ok(
                    json!({ "greedy": depth_json(&greedy), "ext": depth_json(&via), "equal": greedy == via }),
                )
            }
            (Verb::Check, ["kernel"]) => {
                let (m, n) = (a.module("m")?, a.module("n")?);
                m.ring().ensure_same(n.ring(), "kernel check")?;
                let nv = m.ring().nvars();
                let res = free_resolution(&m, nv + 1);
                let exts = ext_range(nv + 2, &m, &n)?;
                let above: Vec<bool> = exts[nv + 1..].iter().map(|e| e.module.is_zero()).collect();
                let h = hom_from_presentation(&m, &n)?;
                let e0 = &exts[0].module;
                let hom_agrees = e0.is_zero() == h.is_zero()
                    && e0.annihilator() == h.annihilator()
                    && local_ass(e0)? == local_ass(&h)?;
                Ok(json!({
                    "resolution_is_complex": res.is_complex(),
                    "ext_vanishes_above_n": above.iter().all(|&b| b),
                    "ext0_matches_hom": hom_agrees,
                }))
            }
            _ => Err(malformed(format!("unknown command {}", c.head_text()))),
        }
    }

    fn check_oracle(&self, c: &Command, a: &Args<'_>, s: &Settings) -> Result<Json> {
        let (i, n, k, l) = (a.ideal("ideal")?, a.module("n")?, a.k()?, a.uint("l")?);
        let ts = positive_range(c, "t", s.t_range)?;
        let es = positive_range(c, "exps", s.exps_range)?;
        let m = Module::free(i.ring(), 1);
        let formula = ass_lch_formula(&i, &m, &n, k, l, s.seed)?;
        let mut cases = Vec::new();
        let mut all = true;
        for t in &ts {
            let set = ext_ass_sets(
                &ExtIdealSpec::Power {
                    ideal: i.clone(),
                    t: *t,
                },
                &n,
                k,
                l,
                s.seed,
            )?;
            all &= set == formula.union;
            cases.push(json!({ "ideal": format!("I^{t}"), "set": set_json(&set), "equal": set == formula.union }));
        }
        let gens = i.gens().to_vec();
        for exps in tuples(gens.len(), &es) {
            let spec = ExtIdealSpec::GeneratorPowers {
                gens: gens.clone(),
                exps: exps.clone(),
            };
            let set = ext_ass_sets(&spec, &n, k, l, s.seed)?;
            all &= set == formula.union;
            cases.push(json!({ "ideal": format!("powers {exps:?}"), "set": set_json(&set), "equal": set == formula.union }));
        }
        Ok(json!({
            "depth": depth_json(&formula.depth.value),
            "formula": set_json(&formula.union),
            "unproven_regime": formula.unproven_regime,
            "cases": cases,
            "verdict": if all { "equal" } else { "different" },
        }))
    }
}
