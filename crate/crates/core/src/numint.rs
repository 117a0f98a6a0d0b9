//! Numerical iterated integrals `∫_γ dt/(t−s₁) ∘ ⋯ ∘ dt/(t−sₙ)` along polylines.
//!
//! Convention: `∫_{0≤t₁≤⋯≤tₙ≤1} ω₁(γ(t₁))⋯ωₙ(γ(tₙ))`, so the first form is
//! innermost. With it, `iterint(0→z; 1, 0, …, 0) = −Liₙ(z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rational::{parse_q, to_f64};

pub type C = Complex64;

/// Sign `σ` with `iterint(0→z; 1, 0, …, 0) = σ·Liₙ(z)` under the fixed convention.
pub const LI_CONVENTION_SIGN: i32 = -1;
pub const CONVENTION: &str = "t1<=...<=tn, first form innermost";

#[derive(Clone, Debug, PartialEq)]
pub struct PathPolyline {
    pub waypoints: Vec<C>,
}

impl PathPolyline {
    pub fn new(waypoints: Vec<C>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::Parse("a path needs at least two waypoints".into()));
        }
        Ok(Self { waypoints })
    }

    pub fn segment(a: C, b: C) -> Self {
        Self { waypoints: vec![a, b] }
    }

    pub fn start(&self) -> C {
        self.waypoints[0]
    }

    pub fn end(&self) -> C {
        *self.waypoints.last().expect("nonempty")
    }

    pub fn reversed(&self) -> Self {
        Self { waypoints: self.waypoints.iter().rev().copied().collect() }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if (self.end() - other.start()).norm() > 1e-15 {
            return Err(Error::EndpointMismatch(format!(
                "path ends at {} but the next starts at {}",
                self.end(),
                other.start()
            )));
        }
        let mut w = self.waypoints.clone();
        w.extend(other.waypoints[1..].iter().copied());
        Ok(Self { waypoints: w })
    }

    /// Comma-separated complex literals such as `"0,1/2+1/3j,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.split(',').map(parse_complex).collect::<Result<_>>()?)
    }
}

fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    if s.contains('/') {
        return parse_q(s).map(|x| to_f64(&x));
    }
    s.parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

/// `re`, `imj`, `re+imj` or `re-imj`, with decimal or `p/q` parts.
pub fn parse_complex(s: &str) -> Result<C> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let Some(body) = s.strip_suffix('j') else {
        return Ok(C::new(parse_real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (parse_real(&body[..i])?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => parse_real(x)?,
    };
    Ok(C::new(re, im))
}

#[derive(Clone, Debug)]
pub struct IterintOptions {
    pub tol: f64,
    /// Minimal distance between the path and a pole away from the endpoints.
    pub clearance: f64,
    pub max_rounds: usize,
}

impl Default for IterintOptions {
    fn default() -> Self {
        Self { tol: 1e-10, clearance: 1e-3, max_rounds: 8 }
    }
}

impl IterintOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

#[derive(Clone, Debug)]
pub struct IterintResult {
    pub value: C,
    /// Change under the last refinement.
    pub error: f64,
    pub panels: usize,
}

const NODES: usize = 20;

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[n - 1 - i] = z;
        w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Nodes, weights and the matrix `S[i][j] = ∫_{−1}^{x_i} L_j`.
struct Rule {
    x: Vec<f64>,
    w: Vec<f64>,
    s: Vec<Vec<f64>>,
}

impl Rule {
    fn new(n: usize) -> Self {
        let (x, w) = gauss_legendre(n);
        let lagrange = |j: usize, t: f64| {
            let mut v = 1.0;
            for (m, xm) in x.iter().enumerate() {
                if m != j {
                    v *= (t - xm) / (x[j] - xm);
                }
            }
            v
        };
        let s = (0..n)
            .map(|i| {
                let half = (x[i] + 1.0) / 2.0;
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|m| half * w[m] * lagrange(j, -1.0 + half * (x[m] + 1.0)))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Self { x, w, s }
    }
}

/// Panel breakpoints on `[0, 1]`: uniform, plus geometric grading towards both ends.
fn panels(uniform: usize, levels: usize) -> Vec<f64> {
    let mut pts = vec![0.0, 1.0];
    let h = 1.0 / uniform as f64;
    for i in 1..uniform {
        pts.push(i as f64 * h);
    }
    let mut g = h;
    for _ in 0..levels {
        g /= 4.0;
        pts.push(g);
        pts.push(1.0 - g);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pts.dedup();
    pts
}

fn dist_to_segment(p: C, a: C, b: C) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

fn check_path(path: &PathPolyline, poles: &[C], opts: &IterintOptions) -> Result<()> {
    let near = |x: C, y: C| (x - y).norm() < 1e-14;
    if let Some(s) = poles.first() {
        if near(*s, path.start()) {
            return Err(Error::DivergentEndpoint(format!("first pole {s} is the start point")));
        }
    }
    if let Some(s) = poles.last() {
        if near(*s, path.end()) {
            return Err(Error::DivergentEndpoint(format!("last pole {s} is the end point")));
        }
    }
    for s in poles {
        if near(*s, path.start()) || near(*s, path.end()) {
            continue;
        }
        for seg in path.waypoints.windows(2) {
            let d = dist_to_segment(*s, seg[0], seg[1]);
            if d < opts.clearance {
                return Err(Error::PathTooCloseToPole(format!(
                    "pole {s} is {d:.3e} from the segment {}→{}",
                    seg[0], seg[1]
                )));
            }
        }
    }
    Ok(())
}

/// One pass with a fixed panel schedule; returns `F_n(1)`.
fn integrate_once(path: &PathPolyline, poles: &[C], rule: &Rule, breaks: &[f64]) -> C {
    let n = poles.len();
    // values F_0..F_n at the current point
    let mut f = vec![C::new(0.0, 0.0); n + 1];
    f[0] = C::new(1.0, 0.0);
    for seg in path.waypoints.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let d = b - a;
        for p in breaks.windows(2) {
            let (lo, hi) = (p[0], p[1]);
            let half = (hi - lo) / 2.0;
            let pts: Vec<C> = rule.x.iter().map(|x| a + d * (lo + half * (x + 1.0))).collect();
            // F_{k−1} at the nodes, starting with F_0 = 1
            let mut prev = vec![C::new(1.0, 0.0); NODES];
            for k in 1..=n {
                let g: Vec<C> = (0..NODES).map(|j| prev[j] * d / (pts[j] - poles[k - 1])).collect();
                let cur: Vec<C> = (0..NODES)
                    .map(|i| f[k] + (0..NODES).map(|j| g[j] * rule.s[i][j]).sum::<C>() * half)
                    .collect();
                f[k] += (0..NODES).map(|j| g[j] * rule.w[j]).sum::<C>() * half;
                prev = cur;
            }
        }
    }
    f[n]
}

/// The time-ordered iterated integral along `path`.
pub fn iterint(path: &PathPolyline, poles: &[C], opts: &IterintOptions) -> Result<IterintResult> {
    check_path(path, poles, opts)?;
    if poles.is_empty() {
        return Ok(IterintResult { value: C::new(1.0, 0.0), error: 0.0, panels: 0 });
    }
    let rule = Rule::new(NODES);
    let (mut uniform, mut levels) = (2, 6);
    let mut breaks = panels(uniform, levels);
    let mut last = integrate_once(path, poles, &rule, &breaks);
    let mut error = f64::INFINITY;
    for _ in 0..opts.max_rounds {
        uniform *= 2;
        levels += 4;
        breaks = panels(uniform, levels);
        let next = integrate_once(path, poles, &rule, &breaks);
        error = (next - last).norm();
        last = next;
        if error <= opts.tol {
            break;
        }
    }
    Ok(IterintResult { value: last, error, panels: (breaks.len() - 1) * (path.waypoints.len() - 1) })
}

/// Outcome of a numerical identity check.
#[derive(Clone, Debug)]
pub struct NumCheck {
    pub lhs: C,
    pub rhs: C,
    pub tol: f64,
}

impl NumCheck {
    pub fn diff(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn holds(&self) -> bool {
        self.diff() <= self.tol
    }
}

fn interleavings(a: &[C], b: &[C]) -> Vec<Vec<C>> {
    crate::polyint::interleavings(a, b)
}

/// `I(f₁)·I(f₂) = Σ_σ I(σ(f₁, f₂))`.
pub fn numeric_shuffle_check(path: &PathPolyline, f1: &[C], f2: &[C], tol: f64) -> Result<NumCheck> {
    let opts = IterintOptions::with_tol(tol * 1e-3);
    let lhs = iterint(path, f1, &opts)?.value * iterint(path, f2, &opts)?.value;
    let mut rhs = C::new(0.0, 0.0);
    for w in interleavings(f1, f2) {
        rhs += iterint(path, &w, &opts)?.value;
    }
    Ok(NumCheck { lhs, rhs, tol })
}

/// `I(γ₁γ₂; f) = Σ_k I(γ₁; f₁…f_k)·I(γ₂; f_{k+1}…fₙ)`.
pub fn numeric_pathcomp_check(p1: &PathPolyline, p2: &PathPolyline, forms: &[C], tol: f64) -> Result<NumCheck> {
    let opts = IterintOptions::with_tol(tol * 1e-3);
    let whole = p1.concat(p2)?;
    let lhs = iterint(&whole, forms, &opts)?.value;
    let mut rhs = C::new(0.0, 0.0);
    for k in 0..=forms.len() {
        rhs += iterint(p1, &forms[..k], &opts)?.value * iterint(p2, &forms[k..], &opts)?.value;
    }
    Ok(NumCheck { lhs, rhs, tol })
}

/// `Liₙ(z) = Σ z^k/k^n` for `|z| < 1`, summed until the tail bound is below `tol`.
pub fn li_oracle(n: u32, z: C, tol: f64) -> Result<C> {
    let r = z.norm();
    if r >= 1.0 {
        return Err(Error::OutOfDomain(format!("|z| = {r} is not below 1")));
    }
    let mut sum = C::new(0.0, 0.0);
    let mut pow = z;
    let mut k: u64 = 1;
    loop {
        sum += pow / (k as f64).powi(n as i32);
        let tail = r.powi(k as i32 + 1) / ((k + 1) as f64).powi(n as i32) / (1.0 - r);
        if tail <= tol || r == 0.0 {
            return Ok(sum);
        }
        pow *= z;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn gauss_rule_is_exact() {
        let (x, w) = gauss_legendre(NODES);
        for deg in 0..2 * NODES {
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((q - exact).abs() < 1e-13, "degree {deg}");
        }
    }

    #[test]
    fn depth_one_is_a_logarithm() {
        let p = PathPolyline::segment(c(0.0), c(0.5));
        let v = iterint(&p, &[c(3.0)], &IterintOptions::default()).unwrap().value;
        assert!((v - c((5.0f64 / 6.0).ln())).norm() < 1e-12);
        let back = iterint(&p.reversed(), &[c(3.0)], &IterintOptions::default()).unwrap().value;
        assert!((v + back).norm() < 1e-12);
    }

    #[test]
    fn polylog_convention() {
        let p = PathPolyline::segment(c(0.0), c(0.5));
        let li2 = li_oracle(2, c(0.5), 1e-15).unwrap();
        let closed = PI * PI / 12.0 - 2f64.ln().powi(2) / 2.0;
        assert!((li2.re - closed).abs() < 1e-13);
        assert!((li_oracle(1, c(0.5), 1e-15).unwrap().re - 2f64.ln()).abs() < 1e-13);
        assert_eq!(li_oracle(3, c(0.0), 1e-15).unwrap(), c(0.0));
        for n in 2..=4 {
            let mut poles = vec![c(1.0)];
            poles.extend(std::iter::repeat(c(0.0)).take(n - 1));
            let v = iterint(&p, &poles, &IterintOptions::default()).unwrap().value;
            let li = li_oracle(n as u32, c(0.5), 1e-15).unwrap();
            assert!((v - li * LI_CONVENTION_SIGN as f64).norm() < 1e-10, "n={n}: {v} vs {li}");
        }
        assert!(matches!(li_oracle(2, c(1.0), 1e-10), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn path_errors() {
        let p = PathPolyline::segment(c(0.0), c(1.0));
        let o = IterintOptions::default();
        assert!(matches!(iterint(&p, &[c(0.0)], &o), Err(Error::DivergentEndpoint(_))));
        assert!(matches!(iterint(&p, &[c(3.0), c(1.0)], &o), Err(Error::DivergentEndpoint(_))));
        assert!(matches!(iterint(&p, &[c(0.5)], &o), Err(Error::PathTooCloseToPole(_))));
        let bent = PathPolyline::parse("0, 1/2+1/2j, 1").unwrap();
        assert!(iterint(&bent, &[c(0.5)], &o).is_ok());
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1/2").unwrap(), c(0.5));
        assert_eq!(parse_complex("0.5-0.25j").unwrap(), C::new(0.5, -0.25));
        assert_eq!(parse_complex("-1/4j").unwrap(), C::new(0.0, -0.25));
        assert_eq!(parse_complex("j").unwrap(), C::new(0.0, 1.0));
        assert_eq!(parse_complex("1e-3+2j").unwrap(), C::new(1e-3, 2.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn shuffle_and_composition() {
        let p = PathPolyline::segment(c(0.0), c(0.5));
        let s = c(3.0);
        let one = iterint(&p, &[s], &IterintOptions::default()).unwrap().value;
        let two = iterint(&p, &[s, s], &IterintOptions::default()).unwrap().value;
        assert!((one * one - two * 2.0).norm() < 1e-12);
        assert!(numeric_shuffle_check(&p, &[c(1.0)], &[c(3.0)], 1e-8).unwrap().holds());
        assert!(numeric_shuffle_check(&p, &[c(1.0)], &[c(3.0), c(5.0)], 1e-8).unwrap().holds());
        let p1 = PathPolyline::parse("0, 1/4+1/4j").unwrap();
        let p2 = PathPolyline::parse("1/4+1/4j, 1/2").unwrap();
        assert!(numeric_pathcomp_check(&p1, &p2, &[], 1e-8).unwrap().holds());
        assert!(numeric_pathcomp_check(&p1, &p2, &[c(3.0)], 1e-8).unwrap().holds());
        assert!(numeric_pathcomp_check(&p1, &p2, &[c(3.0), c(-2.0)], 1e-8).unwrap().holds());
    }
}
