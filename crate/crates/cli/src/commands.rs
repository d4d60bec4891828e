use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use modseries::io::SeriesFile;
use modseries::linear_ode::{
    diff_pade, guess_ode_modp, hermite_pade_ode, holonomy_rejection_test, rejection_grid, search_ode,
    singularity_report, LinearDiffOperator,
};
use modseries::modular::{
    fit_lacunary, power_identity_check, reduce, reduce_rational, verify_lacunary_identity, Ansatz, LacunaryExpr,
    LacunaryKind, ModSeries,
};
use modseries::nonlinear::{self, NonlinearODE, OdeName};
use modseries::pcurv::{classify_p_curvature, Classification};
use modseries::reduce::{
    findings_json, frobenius_truncation_check, parse_rational_list, power_pattern_check, truncation_polynomial,
};
use modseries::relation::{guess_frobenius, guess_relation, search_relation, verify_relation, BivariateRelation};
use modseries::series::coeff::parse_rational;
use modseries::series::growth::{growth_estimate, integrality_check};
use modseries::series::hypergeometric::Hypergeometric;
use modseries::series::period::complementary_period_series;
use modseries::series::{normalized_series, ratio_2f1_series, tutte_series, IntegerSeries, TutteParam, TutteSeries};

use crate::args::{Cli, Command, Gen, Guess, Report, Verify};
use crate::output::{compact, emit, pretty, read_json, read_series, usage, CliError, CliResult, Outcome};

struct Ctx {
    json: bool,
    command: &'static str,
}

impl Ctx {
    /// Prints the verdict: `fields` as JSON, or `text` for humans.
    fn finish(&self, outcome: Outcome, mut fields: Value, text: &str) -> CliResult<Outcome> {
        if self.json {
            let obj = fields.as_object_mut().expect("object");
            obj.insert("command".into(), json!(self.command));
            obj.insert("status".into(), json!(outcome.status()));
            println!("{}", serde_json::to_string(&fields).expect("serializable"));
        } else if !text.is_empty() {
            println!("{text}");
        }
        Ok(outcome)
    }

    /// Artifact goes to `out` when given; otherwise to stdout unless --json, which embeds it.
    fn artifact(&self, out: Option<&Path>, payload: &str) -> CliResult<()> {
        if out.is_some() || !self.json {
            emit(out, payload)?;
        }
        Ok(())
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Gen(g) => gen(&Ctx { json, command: "gen" }, g),
        Command::Reduce { modulus, input, output } => {
            let ctx = Ctx { json, command: "reduce" };
            if *modulus < 2 {
                return usage("--mod must be at least 2");
            }
            let s = match read_series(input)? {
                SeriesFile::Int(s) => reduce(&s, *modulus)?,
                SeriesFile::Rat(s) => reduce_rational(&s, *modulus)?,
                SeriesFile::Mod(s) => s.reduce_modulus(*modulus)?,
                SeriesFile::QPoly(_) => return usage("cannot reduce a q-polynomial series; generate it at a value of q"),
            };
            let text = SeriesFile::Mod(s.clone()).to_text();
            ctx.artifact(output.as_deref(), &text)?;
            ctx.finish(
                Outcome::Ok,
                json!({"modulus": modulus, "n": s.order(), "nonzero": s.support().count(), "series": embed(json, output.is_none(), &text)}),
                "",
            )
        }
        Command::Guess(g) => guess(&Ctx { json, command: "guess" }, g),
        Command::Verify(v) => verify(&Ctx { json, command: "verify" }, v),
        Command::Pcurv { operator, require_zero, output } => {
            let ctx = Ctx { json, command: "pcurv" };
            let op = match LinearDiffOperator::from_json(&read_json(operator)?)? {
                LinearDiffOperator::ModP(o) => o,
                LinearDiffOperator::Rational(_) => return usage("p-curvature needs a mod-p operator"),
            };
            let rep = classify_p_curvature(&op)?;
            let full = rep.to_json();
            if let Some(o) = output {
                crate::output::write_atomic(o, &pretty(&full))?;
            }
            let ok = !require_zero || rep.classification == Classification::Zero;
            ctx.finish(
                Outcome::from_flag(ok),
                json!({"classification": rep.classification.as_str(), "max_entry_degree": rep.max_entry_degree, "p": op.p(), "order": op.order()}),
                rep.classification.as_str(),
            )
        }
        Command::Diffpade { order, degree, n_use, input, output } => {
            let ctx = Ctx { json, command: "diffpade" };
            let s = read_series(input)?.into_integer()?;
            let fit = match n_use {
                Some(n) => hermite_pade_ode(&s, *order, *degree, *n)?,
                None => diff_pade(&s, *order, *degree)?,
            };
            let Some(fit) = fit else {
                return ctx.finish(Outcome::Failed, json!({"Q": order, "D": degree, "fit": null}), "no operator in this budget");
            };
            let report = singularity_report(&fit.operator);
            let doc = json!({
                "Q": order,
                "D": degree,
                "rows": fit.rows,
                "operator": fit.operator.to_json(),
                "singularities": report.to_json(),
            });
            ctx.artifact(output.as_deref(), &compact(&doc))?;
            ctx.finish(
                Outcome::Ok,
                json!({"Q": order, "D": degree, "rows": fit.rows, "radius": report.radius, "growth": report.growth, "result": embed(json, output.is_none(), &doc)}),
                "",
            )
        }
        Command::Report(r) => report(&Ctx { json, command: "report" }, r),
    }
}

/// With --json and no output path the artifact travels inside the verdict.
fn embed(json: bool, no_out: bool, payload: impl Into<EmbedValue>) -> Value {
    if json && no_out {
        payload.into().0
    } else {
        Value::Null
    }
}

struct EmbedValue(Value);

impl From<&String> for EmbedValue {
    fn from(s: &String) -> Self {
        EmbedValue(json!(s))
    }
}

impl From<&Value> for EmbedValue {
    fn from(v: &Value) -> Self {
        EmbedValue(v.clone())
    }
}

fn parse_q(text: &str) -> CliResult<TutteParam> {
    if text.trim() == "q" {
        Ok(TutteParam::Symbolic)
    } else {
        Ok(TutteParam::Rational(parse_rational(text).map_err(|e| CliError::Usage(format!("--q: {e}")))?))
    }
}

fn gen(ctx: &Ctx, g: &Gen) -> CliResult<Outcome> {
    let (file, out) = match g {
        Gen::Tutte { q, n, normalized, plus_w, out } => {
            let h = tutte_series(&parse_q(q)?, *n)?;
            let file = match h {
                TutteSeries::Integer(h) if *normalized => SeriesFile::Int(normalized_series(&h)?),
                _ if *normalized => return usage("--normalized needs q = 4"),
                TutteSeries::Integer(h) => SeriesFile::Int(if *plus_w { add_w(h) } else { h }),
                TutteSeries::Rational(h) if *plus_w => {
                    let mut c = h.into_coeffs();
                    if c.len() > 1 {
                        c[1] += num_rational::BigRational::from_integer(1.into());
                    }
                    SeriesFile::Rat(modseries::series::Series::new("w", c))
                }
                TutteSeries::Rational(h) => SeriesFile::Rat(h),
                TutteSeries::Poly(_) if *plus_w => return usage("--plus-w needs a numeric q"),
                TutteSeries::Poly(h) => SeriesFile::QPoly(h),
            };
            (file, out)
        }
        Gen::Hypergeom { upper, lower, scale, n, modulus, out } => {
            let hg = Hypergeometric::new(parse_rational_list(upper)?, parse_rational_list(lower)?, BigInt::from(*scale))?;
            let file = match modulus {
                Some(m) => SeriesFile::Mod(hg.series_mod(*n, *m)?),
                None => {
                    let s = hg.series(*n);
                    match s.to_integer() {
                        Ok(i) => SeriesFile::Int(i),
                        Err(_) => SeriesFile::Rat(s),
                    }
                }
            };
            (file, out)
        }
        Gen::Ratio2F1 { n, out } => (SeriesFile::Int(ratio_2f1_series(*n)?), out),
        Gen::PeriodY0 { n, out } => (SeriesFile::Rat(complementary_period_series(*n)?), out),
    };
    let text = file.to_text();
    ctx.artifact(out.output.as_deref(), &text)?;
    ctx.finish(
        Outcome::Ok,
        json!({"domain": file.domain(), "n": file.order(), "series": embed(ctx.json, out.output.is_none(), &text)}),
        "",
    )
}

fn add_w(h: IntegerSeries) -> IntegerSeries {
    let mut c = h.into_coeffs();
    if c.len() > 1 {
        c[1] += 1;
    }
    IntegerSeries::new("w", c)
}

/// Reduced series from a .mseries file, or an exact one reduced mod `modulus`.
fn mod_input(path: &Path) -> CliResult<ModSeries> {
    read_series(path)?.into_mod().map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn guess(ctx: &Ctx, g: &Guess) -> CliResult<Outcome> {
    let (found, out): (Option<(Value, Value)>, _) = match g {
        Guess::Ode { order, degree, max_order, max_degree, guard, input, out } => {
            let s = mod_input(input)?;
            let r = match (order, degree) {
                (Some(q), Some(d)) => guess_ode_modp(&s, *q, *d, *guard)?,
                (None, None) => search_ode(&s, *max_order, *max_degree, *guard)?,
                _ => return usage("--order and --degree go together"),
            };
            (r.map(|g| (g.operator.to_json(), g.to_json())), out)
        }
        Guess::Rel { deg_s, deg_w, max_unknowns, guard, input, out } => {
            let s = mod_input(input)?;
            let r = match (deg_s, deg_w) {
                (Some(a), Some(b)) => guess_relation(&s, *a, *b, *guard)?,
                (None, None) => search_relation(&s, *max_unknowns, *guard)?,
                _ => return usage("--deg-s and --deg-w go together"),
            };
            (
                r.map(|g| {
                    let j = g.relation.to_json();
                    (j.clone(), json!({"relation": j, "nullity": g.nullity, "rows": g.rows}))
                }),
                out,
            )
        }
        Guess::Frobenius { i_max, deg, input, out } => {
            let s = mod_input(input)?;
            (guess_frobenius(&s, *i_max, *deg)?.map(|r| (r.to_json(), json!({"relation": r.to_json()}))), out)
        }
        Guess::Lacunary { poly_degree, lacunary, prefactor, target, out } => {
            let t = mod_input(target)?;
            let ansatz = Ansatz { max_poly_degree: *poly_degree, lacunary: parse_lacunary(lacunary)?, prefactor_exp: *prefactor };
            (fit_lacunary(&t, &ansatz)?.map(|e| (e.to_json(), json!({"expr": e.to_json()}))), out)
        }
    };
    let Some((artifact, summary)) = found else {
        return ctx.finish(Outcome::Failed, json!({"found": false}), "none found within budget");
    };
    ctx.artifact(out.output.as_deref(), &compact(&artifact))?;
    let mut summary = summary;
    summary.as_object_mut().unwrap().insert("found".into(), json!(true));
    ctx.finish(Outcome::Ok, summary, "")
}

fn parse_lacunary(text: &str) -> CliResult<Vec<(LacunaryKind, u32)>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (k, e) = t.trim().split_once('^').unwrap_or((t.trim(), "1"));
            let kind = match k {
                "L2" => LacunaryKind::L2,
                "L3" => LacunaryKind::L3,
                "L6" => LacunaryKind::L6,
                other => return usage(format!("unknown lacunary kind {other}")),
            };
            let e: u32 = e.parse().map_err(|_| CliError::Usage(format!("bad power in {t}")))?;
            Ok((kind, e))
        })
        .collect()
}

fn verify(ctx: &Ctx, v: &Verify) -> CliResult<Outcome> {
    match v {
        Verify::Rel { relation, input } => {
            let rel = BivariateRelation::from_json(&read_json(relation)?)?;
            let s = mod_input(input)?;
            let ok = verify_relation(&rel, &s)?;
            ctx.finish(
                Outcome::from_flag(ok),
                json!({"certified": ok, "modulus": rel.modulus, "coefficients": s.order() + 1}),
                verdict(ok),
            )
        }
        Verify::OdeLinear { operator, input } => {
            let op = LinearDiffOperator::from_json(&read_json(operator)?)?;
            let file = read_series(input)?;
            let (zero, checked) = match (&op, file) {
                (LinearDiffOperator::ModP(o), SeriesFile::Mod(s)) => {
                    if s.modulus() != o.p() {
                        return usage(format!("operator is mod {} but the series is mod {}", o.p(), s.modulus()));
                    }
                    let r = o.apply(&s)?;
                    (r.is_zero(), r.order())
                }
                (LinearDiffOperator::ModP(o), f) => {
                    let r = o.apply(&reduce_rational(&f.into_rational()?, o.p())?)?;
                    (r.is_zero(), r.order())
                }
                (LinearDiffOperator::Rational(o), f) => {
                    let s = f.into_rational()?;
                    let r = o.apply(&s)?;
                    (r.is_zero(), r.order())
                }
            };
            ctx.finish(Outcome::from_flag(zero), json!({"annihilated": zero, "checked_through": checked}), verdict(zero))
        }
        Verify::Node { ode, ode_file, q, n, input } => verify_node(ctx, ode.as_deref(), ode_file.as_deref(), q.as_deref(), *n, input.as_deref()),
        Verify::Lacunary { expr, target, subject } => {
            let e = LacunaryExpr::from_json(&read_json(expr)?)?;
            let t = mod_input(target)?;
            let subj = match subject {
                Some(p) => Some(read_series(p)?.into_integer()?),
                None if e.uses_subject() => return usage("expression uses S; pass --subject"),
                None => None,
            };
            let ok = verify_lacunary_identity(&e, subj.as_ref(), &t)?;
            ctx.finish(Outcome::from_flag(ok), json!({"certified": ok, "modulus": t.modulus()}), verdict(ok))
        }
        Verify::PowerIdentity { e, num, den, input } => {
            let s = mod_input(input)?;
            let m = s.modulus();
            let poly = |t: &str| -> CliResult<Vec<u64>> {
                t.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map(|v| v.rem_euclid(m as i64) as u64)
                            .map_err(|_| CliError::Usage(format!("bad coefficient {x}")))
                    })
                    .collect()
            };
            let ok = power_identity_check(&s, *e, &poly(num)?, &poly(den)?)?;
            ctx.finish(Outcome::from_flag(ok), json!({"certified": ok, "modulus": m, "e": e}), verdict(ok))
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "certified"
    } else {
        "falsified"
    }
}

fn verify_node(
    ctx: &Ctx,
    ode: Option<&str>,
    ode_file: Option<&Path>,
    q: Option<&str>,
    n: Option<usize>,
    input: Option<&Path>,
) -> CliResult<Outcome> {
    let name = ode.map(|s| s.to_ascii_lowercase().replace('_', "-"));
    match name.as_deref() {
        Some("schwarzian") => {
            let n = n.ok_or_else(|| CliError::Usage("schwarzian needs --n".into()))?;
            let r = nonlinear::schwarzian_residual(n)?;
            let ok = r.is_zero();
            return ctx.finish(Outcome::from_flag(ok), json!({"residual_zero": ok, "checked_through": r.high()}), verdict(ok));
        }
        Some("autonomous-q4") => {
            let path = input.ok_or_else(|| CliError::Usage("autonomous-q4 needs an input series F".into()))?;
            let f = read_series(path)?.into_integer()?;
            let r = nonlinear::autonomous_q4_residual(&f)?;
            let ok = r.is_zero();
            return ctx.finish(Outcome::from_flag(ok), json!({"residual_zero": ok, "checked_through_u": r.high()}), verdict(ok));
        }
        _ => {}
    }
    let path = input.ok_or_else(|| CliError::Usage("an input series is required".into()))?;
    let file = read_series(path)?;
    let (zero, order, first) = match (name.as_deref(), ode_file, file) {
        (Some("tutte"), None, SeriesFile::QPoly(s)) => {
            if q.is_some_and(|q| q.trim() != "q") {
                return usage("a q-polynomial series is checked with symbolic q");
            }
            let r = nonlinear::symbolic_tutte_ode().residual(&s)?;
            (r.is_zero(), r.order, r.first_nonzero())
        }
        (name, file_path, f) => {
            let eq: NonlinearODE<num_rational::BigRational> = match (name, file_path) {
                (Some(nm), None) => {
                    let q = match q {
                        Some(t) => Some(parse_rational(t).map_err(|e| CliError::Usage(format!("--q: {e}")))?),
                        None => None,
                    };
                    nonlinear::make_ode(nm.parse::<OdeName>()?, q.as_ref())?
                }
                (None, Some(p)) => NonlinearODE::from_json(&read_json(p)?)?,
                _ => return usage("pass --ode NAME or --ode-file FILE"),
            };
            let r = eq.residual(&f.into_rational()?)?;
            (r.is_zero(), r.order, r.first_nonzero())
        }
    };
    ctx.finish(
        Outcome::from_flag(zero),
        json!({"residual_zero": zero, "checked_through": order, "first_nonzero": first}),
        &if zero { format!("certified through order {order}") } else { format!("falsified at order {}", first.unwrap_or(0)) },
    )
}

fn report(ctx: &Ctx, r: &Report) -> CliResult<Outcome> {
    match r {
        Report::Growth { from, to, input } => {
            let s = read_series(input)?.into_integer()?;
            let (lambda, radius) = growth_estimate(&s, *from, *to)?;
            ctx.finish(Outcome::Ok, json!({"lambda": lambda, "radius": radius}), &format!("lambda {lambda}\nradius {radius}"))
        }
        Report::Singularities { operator } => {
            let op = match LinearDiffOperator::from_json(&read_json(operator)?)? {
                LinearDiffOperator::Rational(o) => o,
                LinearDiffOperator::ModP(_) => return usage("singularities need a rational operator"),
            };
            let rep = singularity_report(&op);
            let doc = rep.to_json();
            if !ctx.json {
                print!("{}", pretty(&doc));
            }
            ctx.finish(Outcome::Ok, json!({"report": doc}), "")
        }
        Report::Integrality { bound, input } => {
            let s = read_series(input)?.into_rational()?;
            let rep = integrality_check(&s, *bound);
            let primes: Vec<u64> = rep.denominator_primes.iter().copied().collect();
            ctx.finish(
                Outcome::from_flag(rep.bounded_so_far),
                json!({
                    "bounded_so_far": rep.bounded_so_far,
                    "rescaling": rep.rescaling,
                    "denominator_primes": primes,
                    "unfactored": rep.unfactored,
                    "first_nonintegral_index": rep.first_nonintegral_index,
                }),
                &format!(
                    "{}\ndenominator primes {primes:?}",
                    match rep.rescaling {
                        Some(c) => format!("cleared by x -> {c} x"),
                        None => "not cleared by any rescaling within the bound".into(),
                    }
                ),
            )
        }
        Report::Truncation { e_max, id, input } => {
            let s = mod_input(input)?;
            let p = s.modulus();
            let t = truncation_polynomial(&s, e_max.unwrap_or_else(|| p.saturating_pow(6)))?;
            let found = matches!(t, modseries::reduce::Truncation::Found { .. });
            let doc = findings_json(id, p, &t);
            ctx.finish(Outcome::from_flag(found), doc.clone(), &serde_json::to_string(&doc).unwrap())
        }
        Report::Frobenius { head, input } => {
            let s = mod_input(input)?;
            let rep = frobenius_truncation_check(&s, *head);
            let text = rep.head.iter().map(|(e, c)| format!("{c}x^{e}")).collect::<Vec<_>>().join(" + ");
            ctx.finish(
                Outcome::from_flag(rep.holds),
                json!({"holds": rep.holds, "head": rep.head}),
                &format!("identity {}\ns^p - 1 = {text} + ...", if rep.holds { "holds" } else { "fails" }),
            )
        }
        Report::PowerPattern { m, input } => {
            let s = read_series(input)?.into_integer()?;
            let ms = m
                .split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("bad M {x}"))))
                .collect::<CliResult<Vec<_>>>()?;
            let rows = power_pattern_check(&s, &ms)?;
            let ok = rows.iter().all(|r| r.holds);
            let text = rows.iter().map(|r| format!("M={} {}", r.m, if r.holds { "holds" } else { "fails" })).collect::<Vec<_>>().join("\n");
            ctx.finish(Outcome::from_flag(ok), json!({"rows": rows}), &text)
        }
        Report::Holonomy { max_order, max_unknowns, n_use, holdout, input } => {
            let s = read_series(input)?.into_integer()?;
            let grid = rejection_grid(*max_order, *max_unknowns);
            let rep = holonomy_rejection_test(&s, &grid, *n_use, *holdout)?;
            let passing: Vec<(usize, usize)> = rep.budgets.iter().filter(|b| b.passes()).map(|b| (b.q, b.d)).collect();
            let rejected = passing.is_empty();
            ctx.finish(
                Outcome::Ok,
                json!({"budgets": rep.budgets.len(), "all_rejected": rejected, "passing": passing, "n_use": n_use, "holdout": holdout}),
                &if rejected {
                    format!("all {} budgets rejected", rep.budgets.len())
                } else {
                    format!("{} budgets pass, first {:?}", passing.len(), passing[0])
                },
            )
        }
    }
}
