//! CSV emission. Reals are written with 12 significant digits, optional
//! values as empty fields, angles in radians.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::engine::{CompareRow, EnvelopePoint, Histogram, McSummary, SamplePath};

#[derive(Debug, Error)]
#[error("{}: {source}", path.display())]
pub struct OutputError {
    pub path: PathBuf,
    #[source]
    pub source: csv::Error,
}

/// `%.12g`-style formatting: fixed notation for moderate exponents, trailing
/// zeros trimmed, scientific otherwise.
pub fn fmt_real(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "NaN".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let rounded: f64 = sci.parse().expect("round trip");
        let fixed = format!("{:.*}", (11 - exp) as usize, rounded);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_real).unwrap_or_default()
}

fn write_table<I>(path: &Path, header: &[&str], rows: I) -> Result<PathBuf, OutputError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let err = |source| OutputError {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(&row).map_err(err)?;
    }
    w.flush().map_err(|e| err(e.into()))?;
    Ok(path.to_path_buf())
}

pub fn write_path(path: &SamplePath, dir: &Path) -> Result<PathBuf, OutputError> {
    write_table(
        &dir.join(format!("path_{}.csv", path.seed)),
        &["t", "L", "alpha", "alpha_hat", "est_error", "U"],
        path.trace.iter().map(|p| {
            [p.t, p.l, p.alpha, p.alpha_hat, p.est_error, p.u]
                .into_iter()
                .map(fmt_real)
                .collect()
        }),
    )
}

pub fn write_events(path: &SamplePath, dir: &Path) -> Result<PathBuf, OutputError> {
    write_table(
        &dir.join(format!("events_{}.csv", path.seed)),
        &["k", "t_k", "interval", "r_k", "u_post"],
        path.transmissions.iter().map(|r| {
            vec![
                r.k.to_string(),
                fmt_real(r.t_k),
                fmt_opt(r.interval),
                r.r_k.to_string(),
                fmt_real(r.u_post),
            ]
        }),
    )
}

pub fn write_envelope(envelope: &[EnvelopePoint], dir: &Path) -> Result<PathBuf, OutputError> {
    write_table(
        &dir.join("envelope.csv"),
        &[
            "t",
            "L_min",
            "L_max",
            "L_mean",
            "alpha_min",
            "alpha_max",
            "alpha_mean",
        ],
        envelope.iter().map(|e| {
            [
                e.t,
                e.l_min,
                e.l_max,
                e.l_mean,
                e.alpha_min,
                e.alpha_max,
                e.alpha_mean,
            ]
            .into_iter()
            .map(fmt_real)
            .collect()
        }),
    )
}

/// Histogram rows; the last row is the overflow bucket `[10·w, inf)`.
pub fn histogram_rows(hist: &Histogram) -> Vec<Vec<String>> {
    let w = hist.bin_width;
    let mut rows: Vec<Vec<String>> = hist
        .fractions()
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            vec![
                fmt_real(i as f64 * w),
                fmt_real((i + 1) as f64 * w),
                fmt_real(f),
            ]
        })
        .collect();
    rows.push(vec![
        fmt_real(hist.counts.len() as f64 * w),
        fmt_real(f64::INFINITY),
        fmt_real(hist.overflow_fraction()),
    ]);
    rows
}

pub fn write_histogram(hist: &Histogram, dir: &Path) -> Result<PathBuf, OutputError> {
    write_table(
        &dir.join("intervals_hist.csv"),
        &["bin_lo", "bin_hi", "fraction"],
        histogram_rows(hist),
    )
}

pub fn write_compare(rows: &[CompareRow], dir: &Path) -> Result<PathBuf, OutputError> {
    write_table(
        &dir.join("compare.csv"),
        &[
            "alpha_d",
            "scheme",
            "min_interval",
            "mean_interval",
            "err_L",
            "err_alpha",
        ],
        rows.iter().map(|r| {
            vec![
                fmt_real(r.alpha_d),
                r.scheme.to_string(),
                fmt_opt(r.min_interval),
                fmt_opt(r.mean_interval),
                fmt_real(r.err_l),
                fmt_real(r.err_alpha),
            ]
        }),
    )
}

/// Per-formation interval histograms of a sweep in one long-format file.
pub fn write_compare_histograms(rows: &[CompareRow], dir: &Path) -> Result<PathBuf, OutputError> {
    write_table(
        &dir.join("compare_hist.csv"),
        &["alpha_d", "scheme", "bin_lo", "bin_hi", "fraction"],
        rows.iter().flat_map(|r| {
            histogram_rows(&r.summary.histogram)
                .into_iter()
                .map(move |bin| {
                    let mut row = vec![fmt_real(r.alpha_d), r.scheme.to_string()];
                    row.extend(bin);
                    row
                })
        }),
    )
}

/// Per-seed trace and event files plus the envelope and histogram of
/// `summary`, all under `dir`.
pub fn emit_outputs(
    summary: &McSummary,
    paths: &[SamplePath],
    dir: &Path,
) -> Result<Vec<PathBuf>, OutputError> {
    fs::create_dir_all(dir).map_err(|e| OutputError {
        path: dir.to_path_buf(),
        source: e.into(),
    })?;
    let mut written = Vec::with_capacity(2 * paths.len() + 2);
    for p in paths {
        written.push(write_path(p, dir)?);
        written.push(write_events(p, dir)?);
    }
    written.push(write_envelope(&summary.envelope, dir)?);
    written.push(write_histogram(&summary.histogram, dir)?);
    Ok(written)
}

/// Header and rows of a CSV file written by this module.
pub fn read_table(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>), OutputError> {
    let err = |source| OutputError {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(err)?;
    let header = r.headers().map_err(err)?.iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    Ok((header, rows))
}
