//! Runs every route on one torus knot and reconciles their outputs through
//! the normalization registry.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, Poly};
use crate::cherednik;
use crate::daha::{self, TorusKnot};
use crate::error::{Error, Result};
use crate::hilbert;
use crate::koszul::graded_basis;
use crate::koszul::model::GRADING_VARS;

/// Variables of every stored normalization monomial.
pub const REGISTRY_VARS: [&str; 3] = ["a", "q", "tc"];

/// Location of the registry inside the source tree.
pub const REGISTRY_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/registry.json");

const EMBEDDED_REGISTRY: &str = include_str!("../data/registry.json");

const GOLDEN: [(u32, u32, usize, &str); 1] =
    [(2, 3, 2, include_str!("../data/golden/koszul_T2_3_r2.json"))];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizationRegistry {
    pub version: u32,
    pub entries: BTreeMap<String, Poly>,
    #[serde(skip)]
    dirty: bool,
}

impl NormalizationRegistry {
    pub fn empty() -> NormalizationRegistry {
        NormalizationRegistry {
            version: 1,
            entries: BTreeMap::new(),
            dirty: false,
        }
    }

    /// The registry as compiled into the library.
    pub fn embedded() -> NormalizationRegistry {
        Self::parse(EMBEDDED_REGISTRY).expect("embedded registry is valid")
    }

    pub fn parse(s: &str) -> Result<NormalizationRegistry> {
        let reg: NormalizationRegistry =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        for (k, v) in &reg.entries {
            if v.vars() != REGISTRY_VARS || v.as_monomial().is_none() {
                return Err(Error::Parse(format!(
                    "registry entry {k} is not a monomial in (a, q, tc)"
                )));
            }
        }
        Ok(reg)
    }

    pub fn load(path: &Path) -> Result<NormalizationRegistry> {
        let s = fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&s)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("registry serializes");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    pub fn get(&self, key: &str) -> Option<&Poly> {
        self.entries.get(key)
    }

    /// Stores `mono` under `key`. An existing entry is never replaced.
    pub fn record(&mut self, key: &str, mono: Poly) -> Result<()> {
        match self.entries.get(key) {
            Some(old) if *old == mono => Ok(()),
            Some(old) => Err(Error::Consistency(format!(
                "registry key {key} holds {old}, refusing {mono}"
            ))),
            None => {
                self.entries.insert(key.to_string(), mono);
                self.dirty = true;
                Ok(())
            }
        }
    }

    /// True when entries were added since loading.
    pub fn is_dirty(&self) -> bool {
        self.dirty
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouteOutput {
    pub computed: bool,
    pub value: Option<Poly>,
    pub note: Option<String>,
}

impl RouteOutput {
    fn value(p: Poly) -> RouteOutput {
        RouteOutput {
            computed: true,
            value: Some(p),
            note: None,
        }
    }

    fn skipped(why: &str) -> RouteOutput {
        RouteOutput {
            computed: false,
            value: None,
            note: Some(why.to_string()),
        }
    }

    fn failed(e: Error) -> RouteOutput {
        RouteOutput {
            computed: false,
            value: None,
            note: Some(format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reconciliation {
    pub pair: String,
    pub key: String,
    pub status: Status,
    pub monomial: Option<Poly>,
    pub residual: Option<Poly>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub knot: TorusKnot,
    pub color: usize,
    pub q_order: usize,
    pub routes: BTreeMap<String, RouteOutput>,
    pub reconciliations: Vec<Reconciliation>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.reconciliations
            .iter()
            .all(|r| r.status != Status::Fail)
    }

    pub fn status(&self, pair: &str) -> Option<Status> {
        self.reconciliations
            .iter()
            .find(|r| r.pair == pair)
            .map(|r| r.status)
    }
}

pub fn default_q_order(m: u32, n: u32) -> usize {
    2 * ((m - 1) * (n - 1)) as usize + 10
}

/// Registry key for a route pair on a knot and color.
pub fn registry_key(pair: &str, k: TorusKnot, r: usize) -> String {
    if r == 1 {
        format!("{pair}/{k}")
    } else {
        format!("{pair}/{k}^{r}")
    }
}

fn golden(k: TorusKnot, r: usize) -> Option<Result<Poly>> {
    #[derive(Deserialize)]
    struct Golden {
        generators: Vec<[i32; 4]>,
    }
    let (_, _, _, src) = GOLDEN
        .iter()
        .find(|g| g.0 == k.m && g.1 == k.n && g.2 == r)?;
    Some(
        serde_json::from_str::<Golden>(src)
            .map_err(|e| Error::Parse(e.to_string()))
            .map(|g| {
                Poly::from_terms(
                    &GRADING_VARS,
                    g.generators.into_iter().map(|d| (d.to_vec(), int(1))),
                )
            }),
    )
}

/// Koszul character in (a, q, tc) with tr set to 1.
fn drop_tr(p: &Poly) -> Poly {
    p.subs_monomial(
        &REGISTRY_VARS,
        &[
            (int(1), vec![1, 0, 0]),
            (int(1), vec![0, 1, 0]),
            (int(1), vec![0, 0, 0]),
            (int(1), vec![0, 0, 1]),
        ],
    )
}

/// (a, q, tc) polynomial at tc = −1, in (a, q).
fn euler(p: &Poly) -> Poly {
    p.subs_monomial(
        &hilbert::VARS,
        &[
            (int(1), vec![1, 0]),
            (int(1), vec![0, 1]),
            (int(-1), vec![0, 0]),
        ],
    )
}

fn lift(p: &Poly) -> Poly {
    let mut out = Poly::zero(&REGISTRY_VARS);
    for (e, c) in p.terms() {
        let mut f = vec![0; 3];
        for (v, x) in p.vars().iter().zip(e) {
            match REGISTRY_VARS.iter().position(|w| w == v) {
                Some(i) => f[i] += x,
                None if *x == 0 => {}
                None => return Poly::zero(&REGISTRY_VARS),
            }
        }
        out.add_term(f, c.clone());
    }
    out
}

struct Ctx<'a> {
    k: TorusKnot,
    r: usize,
    registry: &'a mut NormalizationRegistry,
    out: Vec<Reconciliation>,
}

impl Ctx<'_> {
    fn skip(&mut self, pair: &str, why: String) {
        self.out.push(Reconciliation {
            pair: pair.into(),
            key: registry_key(pair, self.k, self.r),
            status: Status::Skipped,
            monomial: None,
            residual: None,
            reason: Some(why),
        });
    }

    fn fail(&mut self, pair: &str, why: String, residual: Option<Poly>) {
        self.out.push(Reconciliation {
            pair: pair.into(),
            key: registry_key(pair, self.k, self.r),
            status: Status::Fail,
            monomial: None,
            residual,
            reason: Some(why),
        });
    }

    /// Checks `lhs = c·x^e · rhs` against the stored monomial, recording it on first sight.
    fn compare(&mut self, pair: &str, lhs: &Poly, rhs: &Poly) {
        let observed = lhs
            .monomial_ratio(rhs)
            .map(|(e, c)| lift(&Poly::monomial(lhs.vars(), e, c)))
            .filter(|m| !m.is_zero());
        let residual = |m: &Poly| lhs - &(rhs * &restrict(m, lhs.vars()));
        self.settle(pair, observed, residual, || lhs - rhs);
    }

    /// Checks a monomial that a route computed itself.
    fn compare_ratio(&mut self, pair: &str, ratio: &Poly) {
        let observed = lift(ratio);
        let residual = |m: &Poly| &observed - m;
        self.settle(pair, Some(observed.clone()), residual, || observed.clone());
    }

    fn settle<F, G>(&mut self, pair: &str, observed: Option<Poly>, residual: F, raw: G)
    where
        F: Fn(&Poly) -> Poly,
        G: Fn() -> Poly,
    {
        let key = registry_key(pair, self.k, self.r);
        match (self.registry.get(&key).cloned(), observed) {
            (Some(stored), _) => {
                let res = residual(&stored);
                if res.is_zero() {
                    self.pass(pair, key, stored, None);
                } else {
                    self.fail(
                        pair,
                        format!("stored monomial {stored} no longer reconciles"),
                        Some(res),
                    );
                }
            }
            (None, Some(m)) => {
                let note = format!("recorded new key {key}");
                match self.registry.record(&key, m.clone()) {
                    Ok(()) => self.pass(pair, key, m, Some(note)),
                    Err(e) => self.fail(pair, e.to_string(), None),
                }
            }
            (None, None) => self.fail(
                pair,
                "outputs differ by more than a monomial".into(),
                Some(raw()),
            ),
        }
    }

    fn pass(&mut self, pair: &str, key: String, m: Poly, note: Option<String>) {
        self.out.push(Reconciliation {
            pair: pair.into(),
            key,
            status: Status::Pass,
            monomial: Some(m),
            residual: None,
            reason: note,
        });
    }
}

/// A registry monomial in the variables of a comparison.
fn restrict(m: &Poly, vars: &[String]) -> Poly {
    let (e, c) = m.as_monomial().expect("registry holds monomials");
    let mut f = vec![0; vars.len()];
    for (v, x) in REGISTRY_VARS.iter().zip(e) {
        match vars.iter().position(|w| w == v) {
            Some(i) => f[i] = x,
            None if x == 0 => {}
            None => return Poly::zero(vars),
        }
    }
    Poly::monomial(vars, f, c)
}

type RouteResult = Result<Option<Poly>>;

/// All routes on T(m, n) in color r, reconciled pairwise.
pub fn crosscheck(
    m: u32,
    n: u32,
    r: usize,
    q_order: usize,
    registry: &mut NormalizationRegistry,
) -> Result<CrossCheckReport> {
    let k = TorusKnot::new(m, n)?;
    if r == 0 {
        return Err(Error::Input("color must be at least 1".into()));
    }
    let daha_route = || -> RouteResult {
        if r > 1 {
            return Ok(None);
        }
        daha::homological_reduced(k).map(Some)
    };
    let koszul_route =
        || -> RouteResult { Ok(Some(graded_basis(&k, r, true)?.normalized_character())) };
    let hilbert_route = || -> RouteResult {
        if r > 1 {
            return Ok(None);
        }
        hilbert::os_reduced(k, q_order).map(Some)
    };
    let cherednik_route = || -> Result<Option<cherednik::QuasisReport>> {
        if r > 1 || n > 3 {
            return Ok(None);
        }
        cherednik::check_quasis(m, n, q_order).map(Some)
    };
    let ((d, kz), (h, ch)) = rayon::join(
        || rayon::join(daha_route, koszul_route),
        || rayon::join(hilbert_route, cherednik_route),
    );

    let mut routes = BTreeMap::new();
    let record = |res: &RouteResult, skip: &str| match res {
        Ok(Some(p)) => RouteOutput::value(p.clone()),
        Ok(None) => RouteOutput::skipped(skip),
        Err(e) => RouteOutput::failed(e.clone()),
    };
    routes.insert(
        "daha".into(),
        record(&d, "colors r > 1 are outside the DAHA route"),
    );
    routes.insert("koszul".into(), record(&kz, ""));
    routes.insert(
        "hilbert".into(),
        record(&h, "the Hilbert route is uncolored"),
    );
    let cher_skip = if r > 1 {
        "the Cherednik route is uncolored".to_string()
    } else {
        format!("rank n = {n} is above the Cherednik scope n <= 3")
    };
    routes.insert(
        "cherednik".into(),
        match &ch {
            Ok(Some(rep)) => RouteOutput::value(rep.cherednik_side.clone()),
            Ok(None) => RouteOutput::skipped(&cher_skip),
            Err(e) => RouteOutput::failed(e.clone()),
        },
    );

    let mut ctx = Ctx {
        k,
        r,
        registry,
        out: Vec::new(),
    };
    let koszul_plain = kz.as_ref().ok().and_then(|p| p.as_ref()).map(drop_tr);

    match (&d, &koszul_plain) {
        (Ok(None), _) => ctx.skip(
            "daha-koszul",
            format!("color {r} is outside the DAHA route"),
        ),
        (Ok(Some(dv)), Some(kv)) => ctx.compare("daha-koszul", kv, &relabel(dv)),
        (Err(e), _) => ctx.fail("daha-koszul", format!("daha route failed: {e}"), None),
        (_, None) => ctx.fail("daha-koszul", koszul_failure(&kz), None),
    }
    let kv_aq = koszul_plain.as_ref().map(euler);
    match (&h, &kv_aq) {
        (Ok(None), _) => ctx.skip(
            "koszul-hilbert",
            format!("color {r} is outside the Hilbert route"),
        ),
        (Ok(Some(hv)), Some(kv)) => ctx.compare("koszul-hilbert", kv, hv),
        (Err(e), _) => ctx.fail("koszul-hilbert", format!("hilbert route failed: {e}"), None),
        (_, None) => ctx.fail("koszul-hilbert", koszul_failure(&kz), None),
    }
    match &ch {
        Ok(None) => ctx.skip("cherednik-hilbert", cher_skip),
        Ok(Some(rep)) => ctx.compare_ratio("cherednik-hilbert", &rep.ratio),
        Err(Error::Consistency(msg)) => ctx.fail("cherednik-hilbert", msg.clone(), None),
        Err(e) => ctx.fail(
            "cherednik-hilbert",
            format!("cherednik route failed: {e}"),
            None,
        ),
    }
    match (&d, &h) {
        (Ok(Some(dv)), Ok(Some(hv))) => {
            let shadow = euler(&relabel(dv));
            ctx.compare("daha-hilbert", &shadow, hv);
        }
        (Ok(None), _) | (_, Ok(None)) => ctx.skip(
            "daha-hilbert",
            format!("color {r} is outside the DAHA and Hilbert routes"),
        ),
        (Err(e), _) | (_, Err(e)) => ctx.fail("daha-hilbert", format!("route failed: {e}"), None),
    }
    match (golden(k, r), &kz) {
        (None, _) => ctx.skip(
            "koszul-golden",
            format!("no golden file for {k} in color {r}"),
        ),
        (Some(Err(e)), _) => ctx.fail(
            "koszul-golden",
            format!("golden file unreadable: {e}"),
            None,
        ),
        (Some(Ok(g)), Ok(Some(kv))) => ctx.compare("koszul-golden", kv, &g),
        (Some(Ok(_)), _) => ctx.fail("koszul-golden", koszul_failure(&kz), None),
    }

    Ok(CrossCheckReport {
        knot: k,
        color: r,
        q_order,
        routes,
        reconciliations: ctx.out,
    })
}

/// Homological (a, q, t) polynomial with t read as tc.
fn relabel(p: &Poly) -> Poly {
    Poly::from_terms(
        &REGISTRY_VARS,
        p.terms().map(|(e, c)| (e.clone(), c.clone())),
    )
}

fn koszul_failure(kz: &RouteResult) -> String {
    match kz {
        Err(e) => format!("koszul route failed: {e}"),
        _ => "koszul route produced no value".into(),
    }
}
