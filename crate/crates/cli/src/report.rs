//! JSON shapes of the command outputs.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use orbimilnor::arith::{fmt_big_rational, fmt_rational};
use orbimilnor::catalog::{group_spec, PairSummary};
use orbimilnor::diagsym::{dual_group, phase_to_string, DiagonalGroup};
use orbimilnor::matrix::{IntMatrix, RatMatrix};
use orbimilnor::orblattice::{block_forms, AssemblyOptions, OrbifoldLattice, VerificationReport};
use orbimilnor::polyring::InvertiblePolynomial;
use orbimilnor::rootlattice::recognize;
use orbimilnor::spectra::{self, SectorSpectrum};
use serde::Serialize;
use serde_json::{json, Value};

pub fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

pub fn rat_matrix(m: &RatMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|r| (0..m.cols()).map(|c| fmt_big_rational(&m[(r, c)])).collect()).collect();
    json!(rows)
}

pub fn group_json(g: &DiagonalGroup) -> Value {
    json!({
        "order": g.order(),
        "generators": g.generators().iter().map(|x| phase_to_string(x)).collect::<Vec<_>>(),
        "spec": group_spec(g),
    })
}

pub fn polynomial_json(f: &InvertiblePolynomial) -> anyhow::Result<Value> {
    let ws = f.weight_system()?;
    Ok(json!({
        "polynomial": f.to_string(),
        "variables": f.var_names(),
        "atoms": f.atoms()?.to_string(),
        "exponents": int_matrix(f.exponents()),
        "det": f.exponent_det(),
        "weights": ws.weights,
        "degree": ws.degree,
        "q": f.q_weights().iter().map(fmt_rational).collect::<Vec<_>>(),
        "milnor_number": f.milnor_number()?,
    }))
}

pub fn dual_json(f: &InvertiblePolynomial, g: &DiagonalGroup) -> Value {
    let gt = dual_group(f, g);
    json!({ "polynomial": f.transpose_dual().to_string(), "group": group_json(&gt) })
}

#[derive(Serialize)]
struct SectorRow<'a> {
    #[serde(flatten)]
    spectrum: &'a SectorSpectrum,
    dim: usize,
}

pub fn sectors_json(sp: &[SectorSpectrum]) -> Value {
    json!(sp.iter().map(|s| SectorRow { spectrum: s, dim: s.dim() }).collect::<Vec<_>>())
}

pub fn blocks_json(ol: &OrbifoldLattice) -> anyhow::Result<Value> {
    let mut out = Vec::new();
    for b in &ol.blocks {
        let mut row = json!({
            "group": group_json(&b.group),
            "n_fixed": b.n_fixed(),
            "fixed": b.fixed,
            "interior": b.interior.iter().map(|x| phase_to_string(x)).collect::<Vec<_>>(),
            "p": b.seifert.p,
            "e_rank": b.e_rank(),
            "e_gram": int_matrix(&b.seifert.gram_restricted),
        });
        match &b.classical {
            None => {
                row["classical"] = Value::Null;
            }
            Some(c) => {
                let bf = block_forms(b, c)?;
                let label = if bf.s_orb.rows() > 0 { recognize(&bf.s_orb).map(|r| r.label()) } else { None };
                row["classical"] = json!({
                    "source": c.source,
                    "rank": c.rank(),
                    "gram": int_matrix(&c.gram),
                    "det": big_json(&c.gram.det()),
                });
                row["rank"] = json!(bf.seifert.rows());
                row["seifert"] = int_matrix(&bf.seifert);
                row["seifert_det"] = big_json(&bf.seifert.det());
                row["monodromy"] = rat_matrix(&bf.monodromy);
                row["s_mix"] = int_matrix(&bf.s_mix);
                row["s_orb"] = int_matrix(&bf.s_orb);
                row["s_qua"] = int_matrix(&bf.s_qua);
                row["s_orb_det"] = big_json(&bf.s_orb.det());
                row["root_lattice"] = json!(label);
            }
        }
        out.push(row);
    }
    Ok(json!(out))
}

pub fn verification_json(rep: &VerificationReport) -> Value {
    json!({
        "passed": rep.passed(),
        "monodromy_integral": rep.monodromy_integral,
        "sigma_ledger_ok": rep.sigma_ledger_ok,
        "forms_even": rep.forms_even,
        "seifert_nondegenerate": rep.seifert_nondegenerate,
        "groupring_identities": rep.groupring_identities,
        "rank_matches_spectra": rep.rank_matches_spectra,
        "charpoly_matches_zeta": rep.charpoly_matches_zeta,
        "sigma": rep.blocks.iter().map(|c| json!({
            "order": c.order,
            "n_fixed": c.n_fixed,
            "rank": c.rank,
            "sigma": c.sigma,
        })).collect::<Vec<_>>(),
        "failures": rep.failures(),
    })
}

pub fn analysis(f: &InvertiblePolynomial, g: &DiagonalGroup, opts: &AssemblyOptions) -> anyhow::Result<Value> {
    let sp = spectra::sector_spectra(f, g, opts.spectra)?;
    let ol = orbimilnor::orblattice::assemble_partial(f, g, opts)?;
    let rep = ol.verify(f, g, opts)?;
    let zeta = spectra::zeta_functions(&sp);
    let duality = spectra::duality_report(f, g, opts.spectra)?;
    Ok(json!({
        "polynomial": polynomial_json(f)?,
        "group": group_json(g),
        "dual": dual_json(f, g),
        "sectors": sectors_json(&sp),
        "rank": spectra::total_dimension(&sp),
        "lattice_rank": ol.total_rank(),
        "blocks": blocks_json(&ol)?,
        "zeta": zeta,
        "e_function": spectra::e_functions(&sp),
        "duality": duality,
        "verification": verification_json(&rep),
    }))
}

pub fn summary_json(s: &PairSummary) -> Value {
    let mut v = serde_json::to_value(s).expect("summary serialises");
    v["failures"] = json!(s.failures());
    v
}
