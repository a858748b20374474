//! Batch command-line front end: exact values by default, JSON or table
//! output, one subcommand per library capability.
//!
//! Exit codes: 0 success, 1 computation/precondition failure, 2 usage error.
//! stdout carries results, stderr carries diagnostics.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use chernweil::deligne::{
    cup_s1, cup_t2_11, cup_t2_21, fiber_int_dc2, holonomy_c1hat, holonomy_exponent, Factor,
    Form1, Fourier, DC1S1, DC1T2, DC2T2,
};
use chernweil::forms::{chern_k, chern_total, transgress, FormMatrix, TransgressSelector};
use chernweil::homology::{bockstein, cohomology, snf, CellComplex, Coefficients, IntMat};
use chernweil::models::{catalog, integrate_fund, ModelName};
use chernweil::scalars::{parse_rational, CircleValue, ScalarK};
use chernweil::secondary::{
    cs_flat_lens_line, cs_lens3, cs_lens3_refined, cs_lens3_sweep, cs_unit_circle_bundle,
    e_framed_const, e_order, flat_c1_bar, EOrderCase, LogValue, Modulus, FLAT_C1_DIGITS,
};
use chernweil::series::{
    ahat_factor, e_series, genus_cpn, l_genus_series, rho_ch, su2_rep_ch, todd_genus_series,
    todd_series, EGroup, PowerSeries, DEFAULT_ORDER,
};

#[derive(Parser)]
#[command(
    name = "chernweil",
    version,
    about = "Exact characteristic-form and secondary-invariant calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Emit JSON instead of a table
    #[arg(long, global = true)]
    json: bool,
    /// Add a numeric column via τ ↦ 2πi with this many digits
    #[arg(long, global = true)]
    float_digits: Option<usize>,
    /// Cap the worker threads used by parameter sweeps
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Named power series: todd, ahat, e, rho, su2rep, l-genus
    Series {
        which: String,
        /// Framing group for the e-invariant series
        #[arg(long)]
        group: Option<String>,
        /// Adams-operation index for rho
        #[arg(long)]
        k: Option<u32>,
        /// Representation index for su2rep
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Multiplicative genus of CPⁿ: todd, l (signature), euler
    Genus {
        #[arg(long, default_value = "todd")]
        series: String,
        #[arg(long)]
        n: usize,
    },
    /// Chern forms of a catalog model
    Chern {
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Transgression examples along the affine path of connections
    Transgress {
        /// s1: A₀ = 0, A₁ = c·du, selector c₁
        #[arg(long, default_value = "s1")]
        model: String,
        /// Coefficient c as p/q
        #[arg(long, default_value = "1")]
        coeff: String,
    },
    /// Chern–Simons-type secondary invariants
    #[command(subcommand)]
    Cs(CsCommand),
    /// Higher e-invariant series, constants and orders
    #[command(name = "e-invariant")]
    EInvariant {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Report the constant term and its torsion order
        #[arg(long)]
        constant: bool,
    },
    /// Deligne cohomology operations on S¹ and T²
    #[command(subcommand)]
    Deligne(DeligneCommand),
    /// Cellular cohomology, Bockstein, Smith normal form
    #[command(subcommand)]
    Homology(HomologyCommand),
    /// Catalog models: export the base presentation as JSON
    Models {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
    },
}

#[derive(Subcommand)]
enum CsCommand {
    /// CS(L³_k, g) = [1/k]; --refined for [(1−k³)/(3k)]
    Lens3 {
        #[arg(long)]
        k: Option<u32>,
        /// Sweep a..b (inclusive) instead of a single k, e.g. 1..100
        #[arg(long)]
        k_range: Option<String>,
        #[arg(long)]
        refined: bool,
    },
    /// cs of the flat connection on the unit circle bundle of L^⊗k → CPⁿ
    CircleBundle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        r: i64,
    },
    /// cs of the flat line bundle with holonomy exp(2πij/p) on L^{2n−1}_p
    FlatLens {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        j: i64,
        #[arg(long)]
        n: u32,
    },
    /// ⟨č c₁(∇_λ), [S¹]⟩ = (i/π)·ln m
    FlatC1 {
        /// Positive rational modulus m
        #[arg(long)]
        modulus: Option<String>,
        /// Exact case m = e^s with rational s
        #[arg(long)]
        exp_s: Option<String>,
        #[arg(long, default_value_t = FLAT_C1_DIGITS)]
        digits: usize,
    },
}

#[derive(Subcommand)]
enum DeligneCommand {
    /// ev(x ∪ y) for degree-1 classes on S¹
    CupS1 {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// (x ∪ y) ∈ Ĥ²(T²) for degree-1 classes on T²
    CupT2 {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// ev(w ∪ y) for w ∈ Ĥ²(T²), y ∈ Ĥ¹(T²)
    CupT2Top {
        #[arg(long)]
        w: String,
        #[arg(long)]
        y: String,
    },
    /// Fiber integration of a degree-2 torus class over one circle factor
    FiberInt {
        #[arg(long)]
        class: String,
        #[arg(long)]
        factor: u8,
    },
    /// Holonomy exponent of d + α on S¹ and the class ĉ₁(d+α)
    Holonomy {
        /// Fourier modes of the dt-component, e.g. {"0":{"τ^0":{"re":"1/2","im":"0"}}}
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum HomologyCommand {
    /// Cohomology groups of a cellular complex
    Cohomology {
        /// Built-in complex: circle, torus2, rp2, rp3, rpn:N, lens3:K
        #[arg(long)]
        builtin: Option<String>,
        /// Path to a JSON complex {"cells":[...], "boundaries":[[[...]]]}
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Bockstein H^d(;ℚ/ℤ) → H^{d+1}(;ℤ) of a rational cochain
    Bockstein {
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        file: Option<String>,
        #[arg(long)]
        degree: usize,
        /// Comma-separated rational cochain values, e.g. "1/2,0"
        #[arg(long)]
        cochain: String,
    },
    /// Smith normal form of an integer matrix
    Snf {
        /// Row-major JSON matrix, e.g. "[[2,0],[0,3]]"
        #[arg(long)]
        matrix: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.output.jobs {
        chernweil::par::set_threads(jobs);
    }
    match run(&cli.command, &cli.output) {
        Ok(value) => {
            if cli.output.json {
                println!("{value}");
            } else {
                println!("{}", render_table(&value));
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let msg = err.to_string();
            if cli.output.json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: &Command, out: &OutputOpts) -> Result<Value, chernweil::Error> {
    match cmd {
        Command::Series { which, group, k, n, order } => {
            let s = match which.as_str() {
                "todd" => todd_series(*order),
                "ahat" => ahat_factor(*order),
                "e" => {
                    let g = EGroup::parse(group.as_deref().unwrap_or("S1"))?;
                    e_series(g, *order)
                }
                "rho" => rho_ch(k.unwrap_or(2), *order),
                "su2rep" => su2_rep_ch(n.unwrap_or(1), *order),
                "l-genus" => l_genus_series(*order),
                other => {
                    return Err(chernweil::Error::Invalid(format!("unknown series {other:?}")))
                }
            };
            Ok(series_json(&s))
        }
        Command::Genus { series, n } => {
            let q = match series.as_str() {
                "todd" => todd_genus_series(*n),
                "l" => l_genus_series(*n),
                "euler" => {
                    // total Chern class evaluation: Q = 1 + x
                    let mut coeffs = vec![chernweil::scalars::rat_int(0); n + 1];
                    coeffs[0] = chernweil::scalars::rat_int(1);
                    if *n >= 1 {
                        coeffs[1] = chernweil::scalars::rat_int(1);
                    }
                    PowerSeries::from_coeffs(coeffs)
                }
                other => {
                    return Err(chernweil::Error::Invalid(format!("unknown genus {other:?}")))
                }
            };
            let value = genus_cpn(&q, *n)?;
            Ok(json!({ "genus": series, "n": n, "value": value.to_string() }))
        }
        Command::Chern { model, n, k } => {
            let m = catalog(&parse_model(model, *n, *k, None)?)?;
            let Some(r) = m.curvature_matrix() else {
                let mut map = serde_json::Map::new();
                for key in ["c1", "c2"] {
                    if let Some(f) = m.char_form(key) {
                        map.insert(key.into(), Value::String(f.to_string()));
                    }
                }
                return Ok(Value::Object(map));
            };
            let total = chern_total(&r)?;
            let mut forms = serde_json::Map::new();
            forms.insert("total".into(), Value::String(total.to_string()));
            for kk in 1..=(m.base.top_degree() / 2) {
                let form = chern_k(&r, kk)?;
                let integral = integrate_fund(&form, &m);
                forms.insert(
                    format!("c{kk}"),
                    json!({
                        "form": form.to_string(),
                        "integral": scalar_json(&integral, out),
                    }),
                );
            }
            Ok(Value::Object(forms))
        }
        Command::Transgress { model, coeff } => match model.as_str() {
            "s1" => {
                let c = ScalarK::from_rational(parse_rational(coeff)?);
                let m = catalog(&ModelName::FlatS1(c))?;
                let chernweil::models::ModelData::Connection(a1) = &m.data else {
                    unreachable!("flat_s1 stores a connection")
                };
                let zero = FormMatrix::zero(m.base.clone(), 1);
                let result = transgress(&zero, a1, TransgressSelector::Chern(1))?;
                Ok(json!({ "model": "s1", "transgression": result.to_string() }))
            }
            other => {
                Err(chernweil::Error::Invalid(format!("unknown transgress model {other:?}")))
            }
        },
        Command::Cs(cs) => run_cs(cs, out),
        Command::EInvariant { group, order, constant } => {
            let g = EGroup::parse(group)?;
            if *constant {
                let c = e_series(g, 0).coeff(0).cloned().expect("constant term");
                let ord = match g {
                    EGroup::S1 => e_order(EOrderCase::Eta),
                    EGroup::SU2 => e_order(EOrderCase::Sigma),
                    EGroup::SO3 => chernweil::scalars::torsion_order(&e_framed_const(g))
                        .expect("rational torsion"),
                };
                Ok(json!({
                    "constant": c.to_string(),
                    "order": ord.to_string().parse::<u64>().unwrap_or(0),
                }))
            } else {
                Ok(series_json(&e_series(g, *order)))
            }
        }
        Command::Deligne(dc) => run_deligne(dc, out),
        Command::Homology(hc) => run_homology(hc),
        Command::Models { name, n, k } => {
            let m = catalog(&parse_model(name, *n, *k, None)?)?;
            let presentation: Value = serde_json::from_str(&m.presentation_json())?;
            Ok(json!({ "name": m.name, "presentation": presentation }))
        }
    }
}

fn run_cs(cs: &CsCommand, out: &OutputOpts) -> Result<Value, chernweil::Error> {
    match cs {
        CsCommand::Lens3 { k, k_range, refined } => {
            if let Some(range) = k_range {
                let (a, b) = parse_range(range)?;
                let rows: Vec<Value> = cs_lens3_sweep(a..=b)
                    .into_iter()
                    .map(|(k, plain, refined_v)| {
                        json!({
                            "k": k,
                            "value": circle_json(&plain, out),
                            "refined": circle_json(&refined_v, out),
                        })
                    })
                    .collect();
                return Ok(Value::Array(rows));
            }
            let k = k.ok_or_else(|| chernweil::Error::Invalid("need --k or --k-range".into()))?;
            if k == 0 {
                return Err(chernweil::Error::Invalid("k must be ≥ 1".into()));
            }
            let v = if *refined { cs_lens3_refined(k) } else { cs_lens3(k) };
            Ok(json!({ "value": circle_json(&v, out) }))
        }
        CsCommand::CircleBundle { n, k, r } => {
            if *n == 0 || *k == 0 {
                return Err(chernweil::Error::Invalid("need n ≥ 1 and k ≥ 1".into()));
            }
            Ok(json!({ "value": circle_json(&cs_unit_circle_bundle(*n, *k, *r), out) }))
        }
        CsCommand::FlatLens { p, j, n } => {
            if *p == 0 || *n == 0 {
                return Err(chernweil::Error::Invalid("need p ≥ 1 and n ≥ 1".into()));
            }
            Ok(json!({ "value": circle_json(&cs_flat_lens_line(*p, *j, *n), out) }))
        }
        CsCommand::FlatC1 { modulus, exp_s, digits } => {
            let m = match (modulus, exp_s) {
                (Some(m), None) => Modulus::Rational(parse_rational(m)?),
                (None, Some(s)) => Modulus::ExpRational(parse_rational(s)?),
                _ => {
                    return Err(chernweil::Error::Invalid(
                        "need exactly one of --modulus, --exp-s".into(),
                    ))
                }
            };
            let v = flat_c1_bar(&m, *digits)?;
            let coeff = match &v.i_over_pi_coeff {
                LogValue::Exact(s) => json!({ "exact": s }),
                LogValue::Decimal(s) => json!({ "decimal": s }),
            };
            Ok(json!({
                "i_over_pi_coeff": coeff,
                "exact_scalar": v.exact.as_ref().map(|s| s.to_string()),
            }))
        }
    }
}

fn run_deligne(dc: &DeligneCommand, out: &OutputOpts) -> Result<Value, chernweil::Error> {
    match dc {
        DeligneCommand::CupS1 { x, y } => {
            let x: DC1S1 = serde_json::from_str(x)?;
            let y: DC1S1 = serde_json::from_str(y)?;
            Ok(json!({ "value": circle_json(&cup_s1(&x, &y), out) }))
        }
        DeligneCommand::CupT2 { x, y } => {
            let x: DC1T2 = serde_json::from_str(x)?;
            let y: DC1T2 = serde_json::from_str(y)?;
            Ok(serde_json::to_value(cup_t2_11(&x, &y))?)
        }
        DeligneCommand::CupT2Top { w, y } => {
            let w: DC2T2 = serde_json::from_str(w)?;
            let y: DC1T2 = serde_json::from_str(y)?;
            Ok(json!({ "value": circle_json(&cup_t2_21(&w, &y), out) }))
        }
        DeligneCommand::FiberInt { class, factor } => {
            let w: DC2T2 = serde_json::from_str(class)?;
            let factor = match factor {
                1 => Factor::One,
                2 => Factor::Two,
                _ => return Err(chernweil::Error::Invalid("factor must be 1 or 2".into())),
            };
            Ok(serde_json::to_value(fiber_int_dc2(&w, factor))?)
        }
        DeligneCommand::Holonomy { alpha } => {
            let modes: Fourier<1> = serde_json::from_str(alpha)?;
            let alpha = Form1::from_fn(modes);
            Ok(json!({
                "exponent": holonomy_exponent(&alpha).to_string(),
                "c1_hat": circle_json(&holonomy_c1hat(&alpha), out),
            }))
        }
    }
}

fn run_homology(hc: &HomologyCommand) -> Result<Value, chernweil::Error> {
    match hc {
        HomologyCommand::Cohomology { builtin, file, coeff } => {
            let c = load_complex(builtin.as_deref(), file.as_deref())?;
            let coeff = parse_coeff(coeff)?;
            let groups = cohomology(&c, coeff);
            let rows: Vec<Value> = groups
                .iter()
                .enumerate()
                .map(|(d, g)| json!({ "degree": d, "group": g.to_string() }))
                .collect();
            Ok(Value::Array(rows))
        }
        HomologyCommand::Bockstein { builtin, file, degree, cochain } => {
            let c = load_complex(builtin.as_deref(), file.as_deref())?;
            let q = cochain.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            let class = bockstein(&c, *degree, &q)?;
            Ok(serde_json::to_value(class)?)
        }
        HomologyCommand::Snf { matrix } => {
            let rows: Vec<Vec<i64>> = serde_json::from_str(matrix)?;
            if rows.is_empty() || rows[0].is_empty() {
                return Err(chernweil::Error::Invalid("matrix must be nonempty".into()));
            }
            let m = IntMat::from_rows(&rows);
            let s = snf(&m);
            let factors: Vec<String> =
                s.invariant_factors().iter().map(|f| f.to_string()).collect();
            Ok(json!({
                "invariant_factors": factors,
                "rank": s.rank(),
                "d": mat_json(&s.d),
                "u": mat_json(&s.u),
                "v": mat_json(&s.v),
            }))
        }
    }
}

fn mat_json(m: &IntMat) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn load_complex(
    builtin: Option<&str>,
    file: Option<&str>,
) -> Result<CellComplex, chernweil::Error> {
    match (builtin, file) {
        (Some(name), None) => match name {
            "circle" => Ok(CellComplex::circle()),
            "torus2" => Ok(CellComplex::torus2()),
            "rp2" => Ok(CellComplex::real_projective(2)),
            "rp3" => Ok(CellComplex::real_projective(3)),
            other => {
                if let Some(n) = other.strip_prefix("rpn:") {
                    let n: usize = n
                        .parse()
                        .map_err(|_| chernweil::Error::Invalid(format!("bad rpn:{n}")))?;
                    Ok(CellComplex::real_projective(n))
                } else if let Some(k) = other.strip_prefix("lens3:") {
                    let k: i64 = k
                        .parse()
                        .map_err(|_| chernweil::Error::Invalid(format!("bad lens3:{k}")))?;
                    Ok(CellComplex::lens3(k))
                } else {
                    Err(chernweil::Error::Invalid(format!("unknown builtin {other:?}")))
                }
            }
        },
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| chernweil::Error::Invalid(format!("cannot read {path}: {e}")))?;
            CellComplex::from_json(&text)
        }
        _ => Err(chernweil::Error::Invalid("need exactly one of --builtin, --file".into())),
    }
}

fn parse_coeff(s: &str) -> Result<Coefficients, chernweil::Error> {
    match s {
        "Z" | "z" => Ok(Coefficients::Z),
        "Q/Z" | "q/z" | "QZ" => Ok(Coefficients::QZ),
        other => {
            if let Some(m) = other.strip_prefix("Z/").or_else(|| other.strip_prefix("z/")) {
                let m: u64 = m
                    .parse()
                    .map_err(|_| chernweil::Error::Invalid(format!("bad modulus in {other:?}")))?;
                if m == 0 {
                    return Err(chernweil::Error::Invalid("modulus must be ≥ 1".into()));
                }
                Ok(Coefficients::ZMod(m))
            } else {
                Err(chernweil::Error::Invalid(format!("unknown coefficients {other:?}")))
            }
        }
    }
}

fn parse_model(
    name: &str,
    n: Option<u32>,
    k: Option<u32>,
    alpha: Option<&str>,
) -> Result<ModelName, chernweil::Error> {
    match name {
        "cpn_taut" => Ok(ModelName::CpnTaut(n.unwrap_or(1))),
        "poincare_t2" => Ok(ModelName::PoincareT2),
        "hopf_su2_s4" => Ok(ModelName::HopfSu2S4),
        "flat_s1" => {
            let c = match alpha {
                Some(a) => ScalarK::from_rational(parse_rational(a)?),
                None => ScalarK::one(),
            };
            Ok(ModelName::FlatS1(c))
        }
        "lens_circle" => Ok(ModelName::LensCircle {
            n: n.unwrap_or(1),
            k: k.ok_or_else(|| chernweil::Error::Invalid("lens_circle needs --k".into()))?,
        }),
        other => Err(chernweil::Error::UnknownModel(other.to_string())),
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), chernweil::Error> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| chernweil::Error::Invalid(format!("bad range {s:?}, want a..b")))?;
    let a: u32 = a.parse().map_err(|_| chernweil::Error::Invalid(format!("bad range {s:?}")))?;
    let b: u32 = b
        .trim_start_matches('=')
        .parse()
        .map_err(|_| chernweil::Error::Invalid(format!("bad range {s:?}")))?;
    if a == 0 || b < a {
        return Err(chernweil::Error::Invalid(format!("bad range {s:?}")));
    }
    Ok((a, b))
}

fn series_json(s: &PowerSeries) -> Value {
    Value::Array(s.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn scalar_json(s: &ScalarK, out: &OutputOpts) -> Value {
    let display = match s.as_rational() {
        Some(r) => r.to_string(),
        None => s.to_string(),
    };
    match out.float_digits {
        Some(d) => {
            let (re, im) = s.eval_complex();
            json!({ "exact": display, "float": format_complex(re, im, d) })
        }
        None => Value::String(display),
    }
}

fn circle_json(v: &CircleValue, out: &OutputOpts) -> Value {
    scalar_json(v.representative(), out)
}

fn format_complex(re: f64, im: f64, digits: usize) -> String {
    let d = digits.min(17);
    if im == 0.0 {
        format!("{re:.d$}")
    } else {
        format!("{re:.d$}{}{:.d$}i", if im < 0.0 { "" } else { "+" }, im)
    }
}

/// A small deterministic table renderer for non-JSON output.
fn render_table(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Array(rows) => {
            for row in rows {
                let _ = writeln!(out, "{}", render_row(row));
            }
        }
        other => {
            let _ = write!(out, "{}", render_row(other));
        }
    }
    out.trim_end().to_string()
}

fn render_row(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, val)| format!("{k} = {}", render_row(val)))
            .collect::<Vec<_>>()
            .join("  "),
        Value::Array(items) => {
            format!("[{}]", items.iter().map(render_row).collect::<Vec<_>>().join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
