//! Command-line front end: parse certificate/semifiltration/witness files,
//! dispatch to the kernel operations, emit derived certificates and
//! verification verdicts.
//!
//! Exit codes: 0 verified/valid/member, 1 refuted, 2 verified modulo an
//! abstaining membership oracle (or unknown), 3 parse or semantic error.

use std::collections::BTreeMap;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use integra::json;
use integra_core::cert::nilpotency_cert;
use integra_core::constructive::{
    diff_cert, inverse_like_cert, negate_cert, product_cert, sum_cert, transitivity_cert,
    truncation_cert, two_sided_cert,
};
use integra_core::lombardi::{joint_cert, product_base_cert, relative_joint_cert};
use integra_core::rees::{
    degree_one_test, drop, drop_accel, drop_two, lift, lift_accel, lift_two, semifil_mixed_product,
    semifil_product, semifil_sum, semifil_transitivity, semifil_truncation, Paranoia,
};
use integra_core::{Element, Membership, Ring, RingCertificate, SfVerdict, Validity, Verdict};

#[derive(Parser)]
#[command(name = "integra", version, about = "integrality certificates over rings and ideal semifiltrations")]
struct Cli {
    /// Skip re-verification of derived certificates.
    #[arg(long, global = true)]
    no_paranoid: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify a plain ring certificate.
    Verify { cert: PathBuf },
    /// Verify a certificate over an ideal semifiltration.
    VerifySf { cert: PathBuf },
    /// Pad a certificate to a higher degree (multiply by X^(p-n)).
    Pad {
        cert: PathBuf,
        degree: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build the nilpotency certificate X^n over the zero-ideal powers.
    Nilpotent {
        /// file with {"ring": ..., "u": ..., "n": ...}
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Characteristic-polynomial certificate of a module presentation.
    FromModule {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Certificate for x + y.
    Sum {
        cx: PathBuf,
        cy: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Certificate for x * y.
    Prod {
        cx: PathBuf,
        cy: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Certificate for -x.
    Neg {
        cert: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Certificate for x - y.
    Diff {
        cx: PathBuf,
        cy: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Transitivity: cv certifies v over A, cu certifies u over A[v].
    Trans {
        cv: PathBuf,
        cu: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Truncated-relation certificate.
    Trunc {
        /// file with {"base","algebra","v","coeffs","k"}
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Two-sided (Laurent-style) certificate.
    TwoSided {
        /// file with {"base","algebra","v","u","s","t"}
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Certificate for u = sum b_i v^i given a certificate for v*u.
    InvLike {
        /// file with {"base","algebra","v","b"}
        input: PathBuf,
        vu_cert: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the semifiltration axioms up to a bound.
    SfValidate {
        semifil: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Coefficient-wise Rees-algebra membership of a polynomial.
    ReesMember {
        /// file with {"semifil": ..., "var": ...}
        handle: PathBuf,
        /// file holding the polynomial as a JSON value over the ambient ring
        poly: PathBuf,
    },
    /// Lift a semifiltration certificate to the Rees algebra.
    ReesLift {
        cert: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Drop a Rees certificate back to a semifiltration certificate.
    ReesDrop {
        rees: PathBuf,
        semifil: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Half-reduction over a product semifiltration (forward or backward).
    ReesLift2 {
        input: PathBuf,
        /// target semifiltration file (backward direction only)
        semifil: Option<PathBuf>,
        #[arg(long)]
        backward: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Accelerated reduction u <-> u Y^lambda (forward or backward).
    ReesAccel {
        input: PathBuf,
        /// target semifiltration file (backward direction only)
        semifil: Option<PathBuf>,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        backward: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Sum of two certificates over the same semifiltration.
    SfSum {
        cx: PathBuf,
        cy: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Product across two semifiltrations (lands on their product).
    SfProd {
        cx: PathBuf,
        cy: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Product of a semifiltration certificate with a plain one.
    SfMixed {
        cx: PathBuf,
        cy: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Transitivity over a semifiltration.
    SfTrans {
        cv: PathBuf,
        cu: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Truncation over a semifiltration (lands on an acceleration).
    SfTrunc {
        /// file with {"base","algebra","semifil","v","coeffs","k"}
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decide 1-integrality over a semifiltration.
    SfDeg1 {
        /// file with {"base","algebra","semifil","u"}
        input: PathBuf,
    },
    /// Certificate from an explicit membership witness and a model.
    Lombardi {
        witness: PathBuf,
        /// file with {"algebra","u","x"}
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Joint integrality over A[x] and A[y] with x y scalar in A.
    Joint {
        cx: PathBuf,
        cy: PathBuf,
        /// file with {"algebra","x","y","xy"}
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Joint integrality over A[xy], the product kept formal as t.
    JointXy {
        cx: PathBuf,
        cy: PathBuf,
        /// file with {"algebra","x","y"}
        model: PathBuf,
        #[arg(long, default_value = "t")]
        var: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Relative joint integrality over (A[xy], (I_rho A[xy])).
    JointRelative {
        cx: PathBuf,
        cy: PathBuf,
        /// file with {"algebra","x","y"}
        model: PathBuf,
        #[arg(long, default_value = "t")]
        var: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T, json::JsonError>) -> Result<T, CliError> {
    r.map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, v: &Value) -> Result<(), CliError> {
    std::fs::write(path, json::to_canonical_string(v))
        .map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn field<'a>(v: &'a Value, key: &str, path: &Path) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError(format!("{}: missing field \"{key}\"", path.display())))
}

fn verdict_exit(v: &Verdict) -> (String, u8) {
    match v {
        Verdict::Verified => ("VERIFIED".into(), 0),
        Verdict::Refuted(value) => (format!("REFUTED evaluation = {value}"), 1),
    }
}

fn sf_verdict_exit(v: &SfVerdict) -> (String, u8) {
    match v {
        SfVerdict::Verified => ("VERIFIED".into(), 0),
        SfVerdict::VerifiedModuloMembership => ("VERIFIED-MODULO-MEMBERSHIP".into(), 2),
        SfVerdict::Refuted(reason) => (format!("REFUTED {reason}"), 1),
    }
}

/// Shared epilogue of the derivation commands: write the file, then (in
/// paranoid mode) report the re-verification verdict and exit accordingly.
enum Derived {
    Plain(RingCertificate),
    /// certificate over a free polynomial base, verified through `subst`
    PlainSubst(RingCertificate, BTreeMap<String, Element>),
    Semifil(integra_core::SemifilCertificate),
    SemifilSubst(integra_core::SemifilCertificate, BTreeMap<String, Element>),
    Rees(integra_core::rees::ReesCertificate),
}

fn finish(derived: Derived, output: &Path, paranoid: bool) -> Result<u8, CliError> {
    let value = match &derived {
        Derived::Plain(c) | Derived::PlainSubst(c, _) => json::ring_cert_to_json(c),
        Derived::Semifil(c) | Derived::SemifilSubst(c, _) => json::semifil_cert_to_json(c),
        Derived::Rees(c) => json::rees_cert_to_json(c),
    };
    write_output(output, &value)?;
    if !paranoid {
        return Ok(0);
    }
    let (line, code) = match &derived {
        Derived::Plain(c) => verdict_exit(&c.verify()?),
        Derived::PlainSubst(c, subst) => verdict_exit(&c.verify_subst(subst)?),
        Derived::Semifil(c) => sf_verdict_exit(&c.verify()?),
        Derived::SemifilSubst(c, subst) => sf_verdict_exit(&c.verify_subst(subst)?),
        Derived::Rees(c) => sf_verdict_exit(&c.verify()?),
    };
    if code == 1 {
        return Err(CliError(format!("derived certificate failed re-verification: {line}")));
    }
    println!("{line}");
    Ok(code)
}

fn load_cert(path: &Path) -> Result<json::CertFile, CliError> {
    in_file(path, json::cert_from_json(&read_json(path)?, "$"))
}

fn load_ring_cert(path: &Path) -> Result<RingCertificate, CliError> {
    Ok(load_cert(path)?.ring_cert().clone())
}

fn load_sf_cert(path: &Path) -> Result<integra_core::SemifilCertificate, CliError> {
    in_file(path, json::semifil_cert_from_json(&read_json(path)?, "$"))
}

/// Reads `{"base", "algebra"}` plus the listed element fields (parsed in
/// the algebra) from an input file.
fn context_and_elems(
    v: &Value,
    path: &Path,
    elems: &[&str],
) -> Result<(Ring, Ring, Vec<Element>), CliError> {
    let base = in_file(path, json::ring_from_json(field(v, "base", path)?, "$.base"))?;
    let algebra = in_file(path, json::ring_from_json(field(v, "algebra", path)?, "$.algebra"))?;
    let mut out = Vec::with_capacity(elems.len());
    for key in elems {
        out.push(in_file(
            path,
            json::elem_from_json(field(v, key, path)?, &algebra, &format!("$.{key}")),
        )?);
    }
    Ok((base, algebra, out))
}

fn parse_base_list(v: &Value, key: &str, base: &Ring, path: &Path) -> Result<Vec<Element>, CliError> {
    let arr = field(v, key, path)?
        .as_array()
        .ok_or_else(|| CliError(format!("{}: field \"{key}\" must be an array", path.display())))?;
    arr.iter()
        .enumerate()
        .map(|(i, c)| {
            in_file(path, json::elem_from_json(c, base, &format!("$.{key}[{i}]")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let paranoia = if cli.no_paranoid { Paranoia::Skip } else { Paranoia::Check };
    let paranoid = !cli.no_paranoid;
    match cli.command {
        Cmd::Verify { cert } => {
            let c = load_ring_cert(&cert)?;
            let (line, code) = verdict_exit(&c.verify()?);
            println!("{line}");
            Ok(code)
        }
        Cmd::VerifySf { cert } => {
            let c = load_sf_cert(&cert)?;
            let (line, code) = sf_verdict_exit(&c.verify()?);
            println!("{line}");
            Ok(code)
        }
        Cmd::Pad { cert, degree, output } => {
            let c = load_ring_cert(&cert)?;
            finish(Derived::Plain(c.pad(degree)?), &output, paranoid)
        }
        Cmd::Nilpotent { input, output } => {
            let v = read_json(&input)?;
            let ring = in_file(&input, json::ring_from_json(field(&v, "ring", &input)?, "$.ring"))?;
            let u = in_file(&input, json::elem_from_json(field(&v, "u", &input)?, &ring, "$.u"))?;
            let n = field(&v, "n", &input)?
                .as_u64()
                .ok_or_else(|| CliError(format!("{}: field \"n\" must be a nonnegative integer", input.display())))?;
            let c = nilpotency_cert(&ring, &u, n as usize)?;
            write_output(&output, &json::semifil_cert_to_json(&c))?;
            // a refuted nilpotency certificate is an expected outcome
            let (line, code) = sf_verdict_exit(&c.verify()?);
            println!("{line}");
            Ok(code)
        }
        Cmd::FromModule { input, output } => {
            let v = read_json(&input)?;
            let mp = in_file(&input, json::presentation_from_json(&v, "$"))?;
            finish(Derived::Plain(mp.to_certificate()?), &output, paranoid)
        }
        Cmd::Sum { cx, cy, output } => {
            let a = load_ring_cert(&cx)?;
            let b = load_ring_cert(&cy)?;
            finish(Derived::Plain(sum_cert(&a, &b)?), &output, paranoid)
        }
        Cmd::Prod { cx, cy, output } => {
            let a = load_ring_cert(&cx)?;
            let b = load_ring_cert(&cy)?;
            finish(Derived::Plain(product_cert(&a, &b)?), &output, paranoid)
        }
        Cmd::Neg { cert, output } => {
            let c = load_ring_cert(&cert)?;
            finish(Derived::Plain(negate_cert(&c)?), &output, paranoid)
        }
        Cmd::Diff { cx, cy, output } => {
            let a = load_ring_cert(&cx)?;
            let b = load_ring_cert(&cy)?;
            finish(Derived::Plain(diff_cert(&a, &b)?), &output, paranoid)
        }
        Cmd::Trans { cv, cu, output } => {
            let v = load_ring_cert(&cv)?;
            let u = load_ring_cert(&cu)?;
            // cu lives over the free polynomial ring A[var]; its
            // coefficients become dense vectors over A
            if u.base().base() != Some(v.base()) {
                return Err(CliError(format!(
                    "{}: base ring must be a polynomial layer over the cv base",
                    cu.display()
                )));
            }
            let coeffs = u
                .coeffs()
                .iter()
                .map(|c| c.coeffs_in_base())
                .collect::<Result<Vec<_>, _>>()?;
            finish(
                Derived::Plain(transitivity_cert(&v, u.element(), &coeffs)?),
                &output,
                paranoid,
            )
        }
        Cmd::Trunc { input, output } => {
            let v = read_json(&input)?;
            let (base, algebra, elems) = context_and_elems(&v, &input, &["v"])?;
            let coeffs = parse_base_list(&v, "coeffs", &base, &input)?;
            let k = field(&v, "k", &input)?
                .as_u64()
                .ok_or_else(|| CliError(format!("{}: field \"k\" must be a nonnegative integer", input.display())))?;
            let c = truncation_cert(&base, &algebra, &elems[0], &coeffs, k as usize)?;
            finish(Derived::Plain(c), &output, paranoid)
        }
        Cmd::TwoSided { input, output } => {
            let v = read_json(&input)?;
            let (base, algebra, elems) = context_and_elems(&v, &input, &["v", "u"])?;
            let s = parse_base_list(&v, "s", &base, &input)?;
            let t = parse_base_list(&v, "t", &base, &input)?;
            let c = two_sided_cert(&base, &algebra, &elems[0], &elems[1], &s, &t)?;
            finish(Derived::Plain(c), &output, paranoid)
        }
        Cmd::InvLike { input, vu_cert, output } => {
            let v = read_json(&input)?;
            let (base, algebra, elems) = context_and_elems(&v, &input, &["v"])?;
            let b = parse_base_list(&v, "b", &base, &input)?;
            let vu = load_ring_cert(&vu_cert)?;
            let c = inverse_like_cert(&base, &algebra, &elems[0], &b, &vu)?;
            finish(Derived::Plain(c), &output, paranoid)
        }
        Cmd::SfValidate { semifil, bound } => {
            let sf = in_file(&semifil, json::semifil_from_json(&read_json(&semifil)?, "$"))?;
            match sf.validate(bound)? {
                Validity::Valid => {
                    println!("VALID");
                    Ok(0)
                }
                Validity::Invalid { a, b, witness } => {
                    println!("INVALID a={a} b={b} witness={witness}");
                    Ok(1)
                }
                Validity::Unknown => {
                    println!("UNKNOWN");
                    Ok(2)
                }
            }
        }
        Cmd::ReesMember { handle, poly } => {
            let h = in_file(&handle, json::rees_handle_from_json(&read_json(&handle)?, "$"))?;
            let p = in_file(&poly, json::elem_from_json(&read_json(&poly)?, &h.ambient(), "$"))?;
            match h.member(&p)? {
                Membership::Member => {
                    println!("MEMBER");
                    Ok(0)
                }
                Membership::NotMember => {
                    println!("NOT-MEMBER");
                    Ok(1)
                }
                Membership::Unknown => {
                    println!("UNKNOWN");
                    Ok(2)
                }
            }
        }
        Cmd::ReesLift { cert, output } => {
            let c = load_sf_cert(&cert)?;
            finish(Derived::Rees(lift(&c)?), &output, paranoid)
        }
        Cmd::ReesDrop { rees, semifil, output } => {
            let rc = in_file(&rees, json::rees_cert_from_json(&read_json(&rees)?, "$"))?;
            let sf = in_file(&semifil, json::semifil_from_json(&read_json(&semifil)?, "$"))?;
            finish(Derived::Semifil(drop(&rc, &sf)?), &output, paranoid)
        }
        Cmd::ReesLift2 { input, semifil, backward, output } => {
            if backward {
                let rc = in_file(&input, json::rees_cert_from_json(&read_json(&input)?, "$"))?;
                let sf_path = semifil.ok_or_else(|| {
                    CliError("--backward needs the target semifiltration file".into())
                })?;
                let sf = in_file(&sf_path, json::semifil_from_json(&read_json(&sf_path)?, "$"))?;
                finish(Derived::Semifil(drop_two(&rc, &sf)?), &output, paranoid)
            } else {
                let c = load_sf_cert(&input)?;
                finish(Derived::Rees(lift_two(&c)?), &output, paranoid)
            }
        }
        Cmd::ReesAccel { input, semifil, lambda, backward, output } => {
            if backward {
                let rc = in_file(&input, json::rees_cert_from_json(&read_json(&input)?, "$"))?;
                let sf_path = semifil.ok_or_else(|| {
                    CliError("--backward needs the target semifiltration file".into())
                })?;
                let sf = in_file(&sf_path, json::semifil_from_json(&read_json(&sf_path)?, "$"))?;
                finish(Derived::Semifil(drop_accel(&rc, lambda, &sf)?), &output, paranoid)
            } else {
                let c = load_sf_cert(&input)?;
                finish(Derived::Rees(lift_accel(&c, lambda)?), &output, paranoid)
            }
        }
        Cmd::SfSum { cx, cy, output } => {
            let a = load_sf_cert(&cx)?;
            let b = load_sf_cert(&cy)?;
            finish(Derived::Semifil(semifil_sum(&a, &b, paranoia)?), &output, paranoid)
        }
        Cmd::SfProd { cx, cy, output } => {
            let a = load_sf_cert(&cx)?;
            let b = load_sf_cert(&cy)?;
            finish(Derived::Semifil(semifil_product(&a, &b, paranoia)?), &output, paranoid)
        }
        Cmd::SfMixed { cx, cy, output } => {
            let a = load_sf_cert(&cx)?;
            let b = load_ring_cert(&cy)?;
            finish(
                Derived::Semifil(semifil_mixed_product(&a, &b, paranoia)?),
                &output,
                paranoid,
            )
        }
        Cmd::SfTrans { cv, cu, output } => {
            let v = load_ring_cert(&cv)?;
            let u = load_sf_cert(&cu)?;
            finish(
                Derived::Semifil(semifil_transitivity(&v, &u, paranoia)?),
                &output,
                paranoid,
            )
        }
        Cmd::SfTrunc { input, output } => {
            let v = read_json(&input)?;
            let (base, algebra, elems) = context_and_elems(&v, &input, &["v"])?;
            let sf = in_file(&input, json::semifil_from_json(field(&v, "semifil", &input)?, "$.semifil"))?;
            let coeffs = parse_base_list(&v, "coeffs", &base, &input)?;
            let k = field(&v, "k", &input)?
                .as_u64()
                .ok_or_else(|| CliError(format!("{}: field \"k\" must be a nonnegative integer", input.display())))?;
            let c = semifil_truncation(&base, &algebra, &sf, &elems[0], &coeffs, k as usize, paranoia)?;
            finish(Derived::Semifil(c), &output, paranoid)
        }
        Cmd::SfDeg1 { input } => {
            let v = read_json(&input)?;
            let base = in_file(&input, json::ring_from_json(field(&v, "base", &input)?, "$.base"))?;
            let algebra =
                in_file(&input, json::ring_from_json(field(&v, "algebra", &input)?, "$.algebra"))?;
            let sf = in_file(&input, json::semifil_from_json(field(&v, "semifil", &input)?, "$.semifil"))?;
            let u = in_file(&input, json::elem_from_json(field(&v, "u", &input)?, &base, "$.u"))?;
            match degree_one_test(&base, &algebra, &sf, &u)? {
                Membership::Member => {
                    println!("INTEGRAL1");
                    Ok(0)
                }
                Membership::NotMember => {
                    println!("NOT-INTEGRAL1");
                    Ok(1)
                }
                Membership::Unknown => {
                    println!("UNKNOWN");
                    Ok(2)
                }
            }
        }
        Cmd::Lombardi { witness, model, output } => {
            let w = in_file(&witness, json::witness_from_json(&read_json(&witness)?, "$"))?;
            let mv = read_json(&model)?;
            let algebra =
                in_file(&model, json::ring_from_json(field(&mv, "algebra", &model)?, "$.algebra"))?;
            let u = in_file(&model, json::elem_from_json(field(&mv, "u", &model)?, &algebra, "$.u"))?;
            let x = in_file(&model, json::elem_from_json(field(&mv, "x", &model)?, &algebra, "$.x"))?;
            finish(Derived::Plain(w.to_certificate(&u, &x)?), &output, paranoid)
        }
        Cmd::Joint { cx, cy, model, output } => {
            let a = load_ring_cert(&cx)?;
            let b = load_ring_cert(&cy)?;
            let mv = read_json(&model)?;
            let algebra =
                in_file(&model, json::ring_from_json(field(&mv, "algebra", &model)?, "$.algebra"))?;
            let x = in_file(&model, json::elem_from_json(field(&mv, "x", &model)?, &algebra, "$.x"))?;
            let y = in_file(&model, json::elem_from_json(field(&mv, "y", &model)?, &algebra, "$.y"))?;
            let scalar_ring = a
                .base()
                .base()
                .cloned()
                .ok_or_else(|| CliError(format!("{}: base must be a polynomial layer", cx.display())))?;
            let xy = in_file(
                &model,
                json::elem_from_json(field(&mv, "xy", &model)?, &scalar_ring, "$.xy"),
            )?;
            finish(Derived::Plain(joint_cert(&a, &b, &x, &y, &xy)?), &output, paranoid)
        }
        Cmd::JointXy { cx, cy, model, var, output } => {
            let a = load_ring_cert(&cx)?;
            let b = load_ring_cert(&cy)?;
            let mv = read_json(&model)?;
            let algebra =
                in_file(&model, json::ring_from_json(field(&mv, "algebra", &model)?, "$.algebra"))?;
            let x = in_file(&model, json::elem_from_json(field(&mv, "x", &model)?, &algebra, "$.x"))?;
            let y = in_file(&model, json::elem_from_json(field(&mv, "y", &model)?, &algebra, "$.y"))?;
            let c = product_base_cert(&a, &b, &x, &y, &var)?;
            let subst: BTreeMap<String, Element> =
                [(var, x.mul(&y)?)].into_iter().collect();
            finish(Derived::PlainSubst(c, subst), &output, paranoid)
        }
        Cmd::JointRelative { cx, cy, model, var, output } => {
            let a = load_sf_cert(&cx)?;
            let b = load_sf_cert(&cy)?;
            let mv = read_json(&model)?;
            let algebra =
                in_file(&model, json::ring_from_json(field(&mv, "algebra", &model)?, "$.algebra"))?;
            let x = in_file(&model, json::elem_from_json(field(&mv, "x", &model)?, &algebra, "$.x"))?;
            let y = in_file(&model, json::elem_from_json(field(&mv, "y", &model)?, &algebra, "$.y"))?;
            let c = relative_joint_cert(&a, &b, &x, &y, &var, paranoia)?;
            let subst: BTreeMap<String, Element> =
                [(var, x.mul(&y)?)].into_iter().collect();
            finish(Derived::SemifilSubst(c, subst), &output, paranoid)
        }
    }
}

fn use_color() -> bool {
    match std::env::var("INTEGRA_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => std::io::stderr().is_terminal(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError(msg)) => {
            if use_color() {
                eprintln!("\x1b[31merror:\x1b[0m {msg}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(3)
        }
    }
}
