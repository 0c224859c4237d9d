//! One function per subcommand, each returning rendered output.

use braidstat::acceptance;
use braidstat::braided::BraidWord;
use braidstat::builtins::{class_by_name, group_by_name, rack_by_name};
use braidstat::coinv::{
    certified_bound, deg_coinv, index_of, one_controlled_check, p_of, splitting_check, tuple_of, CentralSpec, EngineKind,
    LinearCoinv, Multidegree, OrbitCoinv,
};
use braidstat::homology::{fox_h01, predict_bounds, resolution_homology, vanishing_violations, PredictInputs};
use braidstat::hurwitz::{braid_orbits, component_table, point_estimate, qpower_on_orbits, NielsenClass};
use braidstat::rack::Rack;
use braidstat::stats::{legendre_relative_residuals, rows_to_csv, run_experiment, ExperimentSpec, Statistic};
use braidstat::symstats::{
    class_size, format_cycle_type, irr_identity_rows, partitions, sn_decompose, trace_convolution_check, wedge_trace, Which,
};
use braidstat::{Caps, Q};
use serde_json::{json, Value};

use crate::inputs::{self, usage};
use crate::{
    AcceptArgs, BvsArgs, CocycleArgs, CoinvArgs, Failure, FfstatsArgs, Format, HomologyArgs, HurwitzArgs, Output, RackArgs,
    SymstatsArgs,
};

pub struct Ctx {
    pub caps: Caps,
    pub format: Option<Format>,
}

type Res = Result<Output, Failure>;

impl Ctx {
    fn pick(&self, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(usage(format!("format {f:?} is not available here; use one of {allowed:?}").to_lowercase()))
        }
    }
}

fn ok(body: String) -> Res {
    Ok(Output { body, status: 0 })
}

fn json_out(v: &Value) -> Res {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    ok(s)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> Res {
    let mut s = String::from(header);
    s.push('\n');
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    ok(s)
}

fn tuple_str(t: &[usize]) -> String {
    t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn rack(ctx: &Ctx, a: &RackArgs) -> Res {
    ctx.pick(Format::Json, &[Format::Json])?;
    let (name, r) = inputs::rack_arg(&a.obj)?;
    let gens = a.generators.as_deref().map(|g| inputs::list(g, "--generators")).transpose()?;
    let rep = r.predicates(gens.as_deref())?;
    let mut v = json!({"rack": name, "table": r.rows()});
    if let Some(l) = r.labels() {
        v["labels"] = json!(l);
    }
    if let Value::Object(m) = to_value(&rep) {
        for (k, x) in m {
            v[k] = x;
        }
    }
    json_out(&v)
}

pub fn cocycle(ctx: &Ctx, a: &CocycleArgs) -> Res {
    ctx.pick(Format::Json, &[Format::Json])?;
    let (name, c) = inputs::cocycle(&a.obj)?;
    let mut v = c.to_json();
    v["cocycle"] = json!(name);
    if c.cyclotomic_order().is_some() {
        let ps: Result<Vec<usize>, _> = (0..c.rack().size()).map(|y| p_of(&c, y)).collect();
        v["p_y"] = json!(ps?);
    }
    v["degree_bound"] = json!(certified_bound(&c));
    if let Some(d) = a.rackify {
        let rc = Rack::rackify(&c, d)?;
        let emb = braidstat::braided::rackify_embedding_check(&c, d)?;
        v["rackified"] = json!({"d": d, "size": rc.size(), "embedding_ok": emb});
    }
    json_out(&v)
}

pub fn bvs(ctx: &Ctx, a: &BvsArgs) -> Res {
    ctx.pick(Format::Json, &[Format::Json])?;
    let (name, s) = inputs::space(&a.obj)?;
    let mut v = s.to_json();
    v["space"] = json!(name);
    v["permutational"] = json!(s.is_permutational());
    v["monomial"] = json!(s.is_monomial());
    v["yang_baxter"] = json!(s.satisfies_yang_baxter());
    match (&a.word, &a.tuple) {
        (Some(w), Some(t)) => {
            let t = inputs::list(t, "--tuple")?;
            let d = s.dim();
            if t.is_empty() || t.iter().any(|&x| x >= d) {
                return Err(usage(format!("--tuple entries must lie in 0..{d}")));
            }
            let n = t.len();
            let word = BraidWord::parse(n, w)?;
            let f = s.field().clone();
            let img = s.braid_act(&word, n, &[(index_of(&t, d), f.one())])?;
            let terms: Vec<Value> = img.iter().map(|(i, x)| json!({"tuple": tuple_of(*i, d, n), "coefficient": f.display(x)})).collect();
            v["action"] = json!({"word": w, "tuple": t, "image": terms});
        }
        (None, None) => {}
        _ => return Err(usage("--word and --tuple go together")),
    }
    json_out(&v)
}

fn orbit_engine_wanted(a: &CoinvArgs) -> Result<bool, Failure> {
    match a.engine.as_deref().unwrap_or("auto") {
        "auto" => Ok(a.obj.space.is_none()),
        "orbit" => {
            if a.obj.space.is_some() {
                return Err(usage("the orbit engine needs --rack"));
            }
            Ok(true)
        }
        "linear" => Ok(false),
        e => Err(usage(format!("unknown engine {e:?} (auto, linear, orbit)"))),
    }
}

pub fn coinv(ctx: &Ctx, a: &CoinvArgs) -> Res {
    let fmt = ctx.pick(Format::Csv, &[Format::Csv, Format::Json])?;
    let modes = [a.deg_bound.is_some(), a.one_controlled.is_some(), a.split.is_some()].iter().filter(|x| **x).count();
    if modes > 1 {
        return Err(usage("--deg-bound, --one-controlled and --split are exclusive"));
    }
    let caps = &ctx.caps;
    if let Some(b) = a.deg_bound {
        let (name, s) = inputs::space(&a.obj)?;
        let rep = deg_coinv(&s, b, caps)?;
        return match fmt {
            Format::Json => {
                let mut v = to_value(&rep);
                v["space"] = json!(name);
                json_out(&v)
            }
            _ => csv("n,dim", rep.dims.iter().enumerate().map(|(n, d)| format!("{n},{d}"))),
        };
    }
    if let Some(m) = a.one_controlled {
        let big_n = a.window.ok_or_else(|| usage("--one-controlled needs --window N"))?;
        let (name, c) = inputs::cocycle(&a.obj)?;
        let rep = one_controlled_check(&c, &CentralSpec { m, support: None }, big_n, caps)?;
        return match fmt {
            Format::Json => {
                let mut v = to_value(&rep);
                v["cocycle"] = json!(name);
                json_out(&v)
            }
            _ => csv(
                "n,dim_source,dim_target,rank,ker,coker",
                rep.rows.iter().map(|r| format!("{},{},{},{},{},{}", r.n, r.dim_source, r.dim_target, r.rank, r.ker, r.coker)),
            ),
        };
    }
    if let Some(big_n) = a.split {
        let rname = a.obj.rack.as_deref().ok_or_else(|| usage("--split needs --rack BASE*t2"))?;
        let base = rname.strip_suffix("*t2").ok_or_else(|| usage("--split needs a rack named BASE*t2"))?;
        let base = rack_by_name(base)?;
        let (name, c) = inputs::cocycle(&a.obj)?;
        let rep = splitting_check(&base, &c, big_n, caps)?;
        return match fmt {
            Format::Json => {
                let mut v = to_value(&rep);
                v["cocycle"] = json!(name);
                json_out(&v)
            }
            _ => csv(
                "n,total,phi_only,psi_only,mixed",
                rep.rows.iter().map(|r| format!("{},{},{},{},{}", r.n, r.total, r.phi_only, r.psi_only, r.mixed)),
            ),
        };
    }
    let n = a.n.ok_or_else(|| usage("--n is required"))?;
    if orbit_engine_wanted(a)? {
        if a.grade.is_some() {
            return Err(usage("--grade needs the linear engine"));
        }
        let (name, c) = inputs::cocycle(&a.obj)?;
        let md = match &a.multidegree {
            Some(s) => {
                let counts = inputs::list(s, "--multidegree")?;
                let comps = c.rack().components();
                let mut part_of = vec![0; c.rack().size()];
                for (i, comp) in comps.iter().enumerate() {
                    for &x in comp {
                        part_of[x] = i;
                    }
                }
                if counts.len() != comps.len() {
                    return Err(usage(format!("--multidegree needs {} entries, one per component", comps.len())));
                }
                Some(Multidegree { part_of, counts })
            }
            None => None,
        };
        let o = OrbitCoinv::compute(&c, n, md.as_ref(), caps)?;
        return match fmt {
            Format::Json => json_out(&json!({
                "cocycle": name, "n": n, "engine": EngineKind::Orbit, "dim": o.dim(), "orbits": to_value(&o.orbits())
            })),
            _ => csv(
                "n,engine,rep,orbit_size,alive",
                o.orbits().iter().map(|x| format!("{n},orbit,{},{},{}", tuple_str(&x.rep), x.size, x.alive)),
            ),
        };
    }
    if a.multidegree.is_some() {
        return Err(usage("--multidegree needs the orbit engine"));
    }
    let (name, s) = inputs::space(&a.obj)?;
    let l = LinearCoinv::compute(&s, n, a.grade, caps)?;
    match fmt {
        Format::Json => json_out(&json!({
            "space": name, "n": n, "grade": a.grade, "engine": EngineKind::Linear, "dim": l.dim(), "basis": l.basis_tuples()
        })),
        _ => csv("n,engine,rep,orbit_size,alive", l.basis_tuples().iter().map(|t| format!("{n},linear,{},,true", tuple_str(t)))),
    }
}

pub fn homology(ctx: &Ctx, a: &HomologyArgs) -> Res {
    ctx.pick(Format::Json, &[Format::Json])?;
    if a.predict == Some(true) {
        let inp = PredictInputs {
            d: a.d,
            deg_v: a.deg_v,
            n: a.n,
            m: a.m,
            q: a.q,
            r_size: a.r_size,
            g: a.g,
            f: a.f,
            j: a.j,
            dim_m: a.dim_m,
        };
        return json_out(&to_value(&predict_bounds(&inp)));
    }
    let n = a.n.ok_or_else(|| usage("--n is required"))? as usize;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let (name, s) = inputs::space(&a.obj)?;
    let imax = a.imax.unwrap_or(n - 1);
    let engine = a.engine.as_deref().unwrap_or("resolution");
    let (dims, chain_ranks, euler_ok) = match engine {
        "resolution" => {
            let r = resolution_homology(&s, n, imax, a.grade, &ctx.caps)?;
            (r.dims, Some(r.chain_ranks), r.euler_ok)
        }
        "fox" => {
            if imax > 1 || a.grade.is_some() {
                return Err(usage("the fox engine gives H0 and H1 of the full module only"));
            }
            let r = fox_h01(&s, n, &ctx.caps)?;
            ([r.h0, r.h1][..=imax].to_vec(), None, None)
        }
        e => return Err(usage(format!("unknown engine {e:?} (resolution, fox)"))),
    };
    let rep = deg_coinv(&s, a.deg_bound.unwrap_or(8), &ctx.caps)?;
    let d = match rep.result {
        braidstat::coinv::DegResult::Exact(d) => Some(d as u64),
        braidstat::coinv::DegResult::ExceedsBound(_) => None,
    };
    let m = a.grade.map_or(n as i64, |g| g);
    // V sits in degree 1 of the grading
    let deg_v = 1;
    let (threshold, violations) = match d {
        Some(d) if m >= 0 => {
            let t = Q::new(m - d as i64, (d + 2 * deg_v) as i64);
            (Some(t.to_string()), Some(vanishing_violations(&dims, m as u64, d, deg_v)))
        }
        _ => (None, None),
    };
    json_out(&json!({
        "n": n,
        "coefficients": name,
        "field": s.field().spec(),
        "engine": engine,
        "grade": a.grade,
        "dims": dims,
        "chain_ranks": chain_ranks,
        "euler_ok": euler_ok,
        "coinvariant_degree": d,
        "predicted_vanishing_below": threshold,
        "conforms": violations.as_ref().map(|v| v.is_empty()),
        "violations": violations,
    }))
}

pub fn symstats(ctx: &Ctx, a: &SymstatsArgs) -> Res {
    let mode = a.mode.as_deref().unwrap_or("decompose");
    let n = a.n.ok_or_else(|| usage("--n is required"))?;
    match mode {
        "decompose" => {
            ctx.pick(Format::Json, &[Format::Json])?;
            let (name, s) = inputs::space(&a.obj)?;
            let mut v = to_value(&sn_decompose(&s, n, &ctx.caps)?);
            v["space"] = json!(name);
            json_out(&v)
        }
        "irr" => {
            let rows = irr_identity_rows(n)?;
            match ctx.pick(Format::Json, &[Format::Json, Format::Csv])? {
                Format::Csv => csv(
                    "cycle_type,n_times_value,expected",
                    rows.iter().map(|r| format!("{},{},{}", r.cycle_type, r.n_times_value, r.expected)),
                ),
                _ => json_out(&json!({"n": n, "rows": to_value(&rows), "holds": rows.iter().all(|r| r.n_times_value == r.expected * n as i64)})),
            }
        }
        "wedge" => {
            if n == 0 || n > 12 {
                return Err(usage("--mode wedge needs 1 <= n <= 12"));
            }
            let rows: Vec<(String, u128, Vec<i64>)> = partitions(n)
                .into_iter()
                .map(|ct| (format_cycle_type(&ct), class_size(&ct), (0..n).map(|k| wedge_trace(&ct, k, Which::Std)).collect()))
                .collect();
            match ctx.pick(Format::Json, &[Format::Json, Format::Csv])? {
                Format::Csv => {
                    let head: Vec<String> = (0..n).map(|k| format!("wedge{k}")).collect();
                    csv(
                        &format!("cycle_type,class_size,{}", head.join(",")),
                        rows.iter().map(|(c, s, t)| {
                            format!("{c},{s},{}", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                        }),
                    )
                }
                _ => {
                    let rs: Vec<Value> = rows.iter().map(|(c, s, t)| json!({"cycle_type": c, "class_size": s.to_string(), "traces": t})).collect();
                    json_out(&json!({"n": n, "representation": "std", "rows": rs}))
                }
            }
        }
        "trace" => {
            ctx.pick(Format::Json, &[Format::Json])?;
            let q = a.q.ok_or_else(|| usage("--mode trace needs --q"))?;
            json_out(&to_value(&trace_convolution_check(q, n, &ctx.caps)?))
        }
        m => Err(usage(format!("unknown mode {m:?} (decompose, irr, wedge, trace)"))),
    }
}

pub fn hurwitz(ctx: &Ctx, a: &HurwitzArgs) -> Res {
    let gname = a.group.as_deref().ok_or_else(|| usage("--group is required"))?;
    let cname = a.class.as_deref().ok_or_else(|| usage("--class is required"))?;
    let g = group_by_name(gname)?;
    let r = class_by_name(&g, cname)?;
    if let Some(t) = &a.table {
        let fmt = ctx.pick(Format::Json, &[Format::Json, Format::Csv])?;
        let (lo, hi) = inputs::range(t)?;
        let q = a.q.ok_or_else(|| usage("--table needs --q"))?;
        let tab = component_table(&g, &r, lo..=hi, q, &ctx.caps)?;
        return match fmt {
            Format::Csv => csv(
                "n,tuples,orbits,fixed_orbits,descends",
                tab.rows.iter().map(|x| format!("{},{},{},{},{}", x.n, x.tuples, x.orbits, x.fixed_orbits, x.descends)),
            ),
            _ => {
                let mut v = to_value(&tab);
                v["group"] = json!(gname);
                v["class"] = json!(r);
                json_out(&v)
            }
        };
    }
    ctx.pick(Format::Json, &[Format::Json])?;
    let n = a.n.ok_or_else(|| usage("--n is required"))?;
    let mut nc = NielsenClass::new(&g, &r, n, a.product_one.unwrap_or(true), a.generating.unwrap_or(false))?;
    if let Some(md) = &a.multidegree {
        nc = nc.with_multidegree(inputs::list(md, "--multidegree")?)?;
    }
    let os = braid_orbits(&nc, &ctx.caps)?;
    let mut v = to_value(&os);
    v["group"] = json!(gname);
    v["group_order"] = json!(g.size());
    v["class"] = json!(r);
    v["labels"] = json!(r.iter().map(|&x| g.label(x)).collect::<Vec<_>>());
    if let Some(q) = a.q {
        let qp = qpower_on_orbits(&nc, q, &ctx.caps)?;
        if a.estimate == Some(true) {
            let est = point_estimate(q, n as u32, qp.fixed as u64, a.convention_factor.unwrap_or(1))?;
            v["estimate"] = json!(est.to_string());
        }
        v["qpower"] = to_value(&qp);
    } else if a.estimate == Some(true) {
        return Err(usage("--estimate needs --q"));
    }
    json_out(&v)
}

fn experiment(a: &FfstatsArgs) -> Result<ExperimentSpec, Failure> {
    if let Some(p) = &a.experiment {
        if a.q.is_some() || a.n_min.is_some() || a.n_max.is_some() || a.statistic.is_some() {
            return Err(usage("--experiment excludes --q, --n-min, --n-max and --statistic"));
        }
        let text = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
        let is_json = p.extension().is_some_and(|x| x == "json");
        return if is_json {
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", p.display())))
        } else {
            toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", p.display())))
        };
    }
    let q = a.q.ok_or_else(|| usage("--q is required"))?;
    let n_max = a.n_max.ok_or_else(|| usage("--n-max is required"))?;
    let statistic = Statistic::parse(a.statistic.as_deref().ok_or_else(|| usage("--statistic is required"))?)?;
    Ok(ExperimentSpec { q, n_min: a.n_min.unwrap_or(1), n_max, statistic })
}

pub fn ffstats(ctx: &Ctx, a: &FfstatsArgs) -> Res {
    let fmt = ctx.pick(Format::Csv, &[Format::Csv, Format::Json])?;
    let exp = experiment(a)?;
    let rows = run_experiment(&exp, &ctx.caps)?;
    match fmt {
        Format::Json => {
            let mut v = json!({"experiment": to_value(&exp), "rows": to_value(&rows)});
            if exp.statistic == Statistic::Legendre && exp.n_max >= 3 {
                let (rel, decreasing) = legendre_relative_residuals(exp.q, exp.n_max, &ctx.caps)?;
                let rel: Vec<Value> = rel.iter().map(|(n, x)| json!([n, x.to_string()])).collect();
                v["relative_residuals"] = json!(rel);
                v["decreasing"] = json!(decreasing);
            }
            json_out(&v)
        }
        _ => ok(rows_to_csv(&rows)),
    }
}

pub fn accept(ctx: &Ctx, a: &AcceptArgs) -> Res {
    let fmt = ctx.pick(Format::Text, &[Format::Text, Format::Json])?;
    let suite = a.suite.as_deref().unwrap_or("all");
    let ids: Vec<usize> = if suite == "all" {
        (1..=10).collect()
    } else {
        let ids = inputs::list(suite, "--suite")?;
        if ids.is_empty() || ids.iter().any(|i| !(1..=10).contains(i)) {
            return Err(usage("--suite takes all or criterion numbers in 1..=10"));
        }
        ids
    };
    let mut outcomes = Vec::new();
    for id in ids {
        let o = acceptance::run(id, &ctx.caps);
        eprintln!("criterion {id}: {:.2} s of {} s", o.elapsed.as_secs_f64(), o.budget_secs);
        outcomes.push(o);
    }
    let status = if outcomes.iter().all(|o| o.pass) { 0 } else { 1 };
    let body = match fmt {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_value(&outcomes)).expect("outcomes serialize");
            s.push('\n');
            s
        }
        _ => {
            let mut s: String = outcomes.iter().map(|o| o.line() + "\n").collect();
            let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
            s.push_str(&if failed.is_empty() {
                format!("acceptance: {} of {} criteria pass\n", outcomes.len(), outcomes.len())
            } else {
                format!("acceptance: failing criteria {failed:?}\n")
            });
            s
        }
    };
    Ok(Output { body, status })
}
