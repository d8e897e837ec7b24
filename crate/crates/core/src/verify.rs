//! Runs the full battery of checks for Γ, X or Δ and collects them into a
//! deterministic report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::cube::{
    build_delta, build_x, cube_pattern_violation, special_one_cells_with, type2_link_relabel,
    vertex_profiles, x_link_relabel, CubeCell, CubeComplex, Direction, JoinLabel, LinkVertexLabel,
    VertexType,
};
use crate::error::{Error, Result};
use crate::gamma::{
    build_gamma, check_sign_cycles, classify_four_cycle, degree_violations, find_short_cycles,
    Gamma, OffsetScheme,
};
use crate::homology::reduced_homology;
use crate::simplicial::{
    empty_squares, is_connected, is_flag, is_isomorphic_relabel, is_two_sphere, join,
    SimplicialComplex, Verdict,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SAMPLE_HOMOLOGY: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Gamma,
    X,
    Delta,
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(Target::Gamma),
            "x" => Ok(Target::X),
            "delta" => Ok(Target::Delta),
            _ => Err(Error::Config(format!("unknown target `{s}`"))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Gamma => "gamma",
            Target::X => "x",
            Target::Delta => "delta",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationConfig {
    pub target: Target,
    pub p: u32,
    pub scheme: OffsetScheme,
    pub parallelism: usize,
    /// Number of Δ links cross-checked with full homology.
    pub sample_homology: usize,
    pub seed: u64,
}

impl VerificationConfig {
    pub fn new(target: Target, p: u32) -> Self {
        VerificationConfig {
            target,
            p,
            scheme: OffsetScheme::default(),
            parallelism: 1,
            sample_homology: DEFAULT_SAMPLE_HOMOLOGY,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.parallelism == 0 {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub counts: BTreeMap<String, u64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CheckRecord {
    fn new(pass: bool, witness: Option<String>) -> Self {
        CheckRecord {
            counts: BTreeMap::new(),
            status: if pass { Status::Pass } else { Status::Fail },
            witness: if pass { None } else { witness },
        }
    }

    fn count(mut self, key: &str, value: impl TryInto<u64>) -> Self {
        self.counts
            .insert(key.to_string(), value.try_into().unwrap_or(u64::MAX));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub e1: [u32; 2],
    pub e2: [u32; 2],
    pub e3: [u32; 2],
    pub p: u32,
    pub sample_homology: usize,
    pub seed: u64,
    pub target: Target,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub all_pass: bool,
    pub failed: usize,
    pub passed: usize,
}

/// The report. Serialized as key-sorted JSON; the content depends only on
/// the configuration, never on timing or thread count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: BTreeMap<String, CheckRecord>,
    pub config: ConfigEcho,
    pub schema_version: u32,
    pub summary: Summary,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.all_pass
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

struct Recorder {
    checks: BTreeMap<String, CheckRecord>,
    timings: Vec<(String, Duration)>,
    clock: Instant,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            checks: BTreeMap::new(),
            timings: Vec::new(),
            clock: Instant::now(),
        }
    }

    fn put(&mut self, id: &str, rec: CheckRecord) {
        let now = Instant::now();
        self.timings.push((id.to_string(), now - self.clock));
        self.clock = now;
        let prev = self.checks.insert(id.to_string(), rec);
        debug_assert!(prev.is_none(), "check {id} recorded twice");
    }

    fn lap(&mut self, what: &str) {
        let now = Instant::now();
        self.timings.push((what.to_string(), now - self.clock));
        self.clock = now;
    }
}

pub fn run_verification(config: &VerificationConfig) -> Result<VerificationReport> {
    verify_with(config, None)
}

/// Like [`run_verification`], but checks `complex` (typically imported from
/// a cell list) instead of building X or Δ afresh. The report is identical
/// whenever `complex` equals the built one.
pub fn verify_complex(
    config: &VerificationConfig,
    complex: &CubeComplex,
) -> Result<VerificationReport> {
    if config.target == Target::Gamma {
        return Err(Error::Config("target gamma has no cube complex".into()));
    }
    verify_with(config, Some(complex))
}

fn verify_with(
    config: &VerificationConfig,
    given: Option<&CubeComplex>,
) -> Result<VerificationReport> {
    config.validate()?;
    let g = build_gamma(config.p, config.scheme)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;

    let mut rec = Recorder::new();
    pool.install(|| -> Result<()> {
        gamma_checks(&g, &mut rec);
        let built;
        let cc = match (config.target, given) {
            (Target::Gamma, _) => return Ok(()),
            (_, Some(cc)) => cc,
            (Target::X, None) => {
                built = build_x(&g);
                rec.lap("x.build");
                &built
            }
            (Target::Delta, None) => {
                built = build_delta(&g);
                rec.lap("delta.build");
                &built
            }
        };
        match config.target {
            Target::X => x_checks(&g, cc, &mut rec),
            _ => delta_checks(&g, cc, config, &mut rec)?,
        }
        Ok(())
    })?;

    let passed = rec.checks.values().filter(|c| c.passed()).count();
    let failed = rec.checks.len() - passed;
    let scheme = g.scheme();
    Ok(VerificationReport {
        checks: rec.checks,
        config: ConfigEcho {
            e1: scheme.e1,
            e2: scheme.e2,
            e3: scheme.e3,
            p: config.p,
            sample_homology: if config.target == Target::Delta {
                config.sample_homology
            } else {
                0
            },
            seed: config.seed,
            target: config.target,
        },
        schema_version: SCHEMA_VERSION,
        summary: Summary {
            all_pass: failed == 0,
            failed,
            passed,
        },
        timings: rec.timings,
    })
}

fn gamma_checks(g: &Gamma, rec: &mut Recorder) {
    let bad = degree_violations(g);
    rec.put(
        "gamma.degree",
        CheckRecord::new(
            bad.is_empty(),
            bad.first()
                .map(|(v, d)| format!("vertex {v} has degree {d}")),
        )
        .count("vertices", g.vertex_count())
        .count("violations", bad.len()),
    );

    let expected_edges = 8 * g.p() as usize;
    rec.put(
        "gamma.edge-count",
        CheckRecord::new(
            g.edge_count() == expected_edges,
            Some(format!(
                "{} edges, expected {expected_edges}",
                g.edge_count()
            )),
        )
        .count("edges", g.edge_count())
        .count("expected", expected_edges),
    );

    let signs = check_sign_cycles(g);
    let [aa, bb] = signs.same_family_edges;
    rec.put(
        "gamma.bipartite",
        CheckRecord::new(
            aa == 0 && bb == 0,
            Some(format!("{aa} edges inside A, {bb} inside B")),
        )
        .count("a_family_edges", aa)
        .count("b_family_edges", bb),
    );

    let mut r = CheckRecord::new(
        signs.quadrants.iter().all(|q| q.pass),
        signs.quadrants.iter().find_map(|q| {
            q.witness
                .as_ref()
                .map(|w| format!("quadrant A{:?} B{:?}: {w}", q.a_sign, q.b_sign))
        }),
    );
    for q in &signs.quadrants {
        let key = format!("cycle_len_{}{}", sign_char(q.a_sign), sign_char(q.b_sign));
        r = r.count(&key, q.component_len);
    }
    rec.put("gamma.sign-cycles", r);

    let cycles = find_short_cycles(g, 4).expect("bound 4 is valid");
    let mut r = CheckRecord::new(
        cycles.is_empty(),
        cycles.first().map(|c| format!("{}-cycle {c}", c.len())),
    )
    .count("max_len", 4u64)
    .count("cycles", cycles.len());
    let mut cases: BTreeMap<String, u64> = BTreeMap::new();
    for c in cycles.iter().filter(|c| c.len() == 4) {
        *cases
            .entry(format!("case_{:?}", classify_four_cycle(c)))
            .or_default() += 1;
    }
    for (k, v) in cases {
        r = r.count(&k, v);
    }
    rec.put("gamma.no-short-cycles", r);
}

fn sign_char(s: crate::gamma::Sign) -> char {
    match s {
        crate::gamma::Sign::Plus => 'p',
        crate::gamma::Sign::Minus => 'm',
    }
}

/// A single cycle on `n` vertices: 1-dimensional, connected, 2-regular.
pub fn is_single_cycle<L: Ord + Clone>(sc: &SimplicialComplex<L>, n: usize) -> bool {
    sc.dim() == Some(1)
        && sc.vertex_count() == n
        && sc.adjacency().iter().all(|a| a.len() == 2)
        && is_connected(sc)
}

fn x_checks(g: &Gamma, x: &CubeComplex, rec: &mut Recorder) {
    let p = g.p() as usize;
    let census = x.census();
    rec.put(
        "x.census",
        CheckRecord::new(
            census == [4, 8 * p, 8 * p],
            Some(format!("census {census:?}")),
        )
        .count("vertices", census[0])
        .count("edges", census[1])
        .count("squares", census[2]),
    );

    let gc = g.to_complex();
    let (mut iso, mut flag, mut nosq, mut updown) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut square_total = 0;
    for v in x.cells(0) {
        let name = x.cell_tokens(v);
        let lk = x.link(v).expect("vertex of X");
        let map = x_link_relabel(g, &lk);
        if !is_isomorphic_relabel(&lk, &gc, &map).unwrap_or(false) {
            iso.push(format!("link at {name} differs from gamma"));
        }
        if let Verdict::Fail(w) = is_flag(&lk) {
            flag.push(format!("link at {name}: clique {}", join_labels(&w)));
        }
        let sq = empty_squares(&lk);
        square_total += sq.len();
        if let Some(s) = sq.first() {
            nosq.push(format!("link at {name}: empty square {}", join_labels(s)));
        }
        for (dir, sub) in [
            ("ascending", x.ascending_link(v).expect("vertex of X")),
            ("descending", x.descending_link(v).expect("vertex of X")),
        ] {
            if !is_single_cycle(&sub, 2 * p) {
                updown.push(format!(
                    "{dir} link at {name} has f-vector {:?}",
                    sub.f_vector()
                ));
            }
        }
    }
    let n = x.count(0);
    rec.put(
        "x.link-gamma",
        CheckRecord::new(iso.is_empty(), iso.first().cloned()).count("links", n),
    );
    rec.put(
        "x.link-flag",
        CheckRecord::new(flag.is_empty(), flag.first().cloned()).count("links", n),
    );
    rec.put(
        "x.link-no-square",
        CheckRecord::new(nosq.is_empty(), nosq.first().cloned())
            .count("links", n)
            .count("empty_squares", square_total),
    );
    rec.put(
        "x.updown-cycles",
        CheckRecord::new(updown.is_empty(), updown.first().cloned())
            .count("links", 2 * n)
            .count("failures", updown.len()),
    );
}

fn join_labels<L: fmt::Display>(ls: &[L]) -> String {
    ls.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Everything computed from one vertex link of Δ.
struct VertexAudit {
    kind: VertexType,
    f_vector: [usize; 3],
    flag: Option<String>,
    join: Option<String>,
    up: Option<String>,
    down: Option<String>,
}

fn audit_vertex(
    cc: &CubeComplex,
    g: &Gamma,
    gamma_join: &SimplicialComplex<JoinLabel>,
    v: &CubeCell,
) -> VertexAudit {
    let lk = cc.link(v).expect("vertex of the complex");
    let kind = cc.vertex_type(v).expect("vertex of the complex");
    let mut f_vector = [0; 3];
    for (k, slot) in f_vector.iter_mut().enumerate() {
        *slot = lk.count(k);
    }
    let flag = is_flag(&lk)
        .witness()
        .map(|w| format!("clique {}", join_labels(w)));
    let join = match kind {
        VertexType::Type1 => type1_join_mismatch(&lk),
        VertexType::Type2 => match cc.upsilon_factor(v) {
            None => Some(format!(
                "no unique four-point factor, link degrees {:?}",
                cc.link_degrees(v)
            )),
            Some(ups) => {
                let map = type2_link_relabel(g, &lk, ups);
                match is_isomorphic_relabel(&lk, gamma_join, &map) {
                    Ok(true) => None,
                    Ok(false) => Some("link is not gamma joined with four points".into()),
                    Err(e) => Some(e.to_string()),
                }
            }
        },
    };
    let sphere = |dir: Direction| {
        let sub = lk.full_subcomplex(|l| l.direction == dir);
        is_two_sphere(&sub).witness().map(|w| w.to_string())
    };
    VertexAudit {
        kind,
        f_vector,
        flag,
        join,
        up: sphere(Direction::Outgoing),
        down: sphere(Direction::Incoming),
    }
}

// A type 1 link must be the join of its three per-factor point sets, each of
// four points.
fn type1_join_mismatch(lk: &SimplicialComplex<LinkVertexLabel>) -> Option<String> {
    let mut parts: Vec<SimplicialComplex<LinkVertexLabel>> = Vec::new();
    for f in 0..3u8 {
        let pts = lk.full_subcomplex(|l| l.factor == f);
        if pts.vertex_count() != 4 || pts.dim() != Some(0) {
            return Some(format!(
                "factor {f} contributes {} link vertices",
                pts.vertex_count()
            ));
        }
        parts.push(pts);
    }
    let want = join(&join(&parts[0], &parts[1]).ok()?, &parts[2]).ok()?;
    (want != *lk).then(|| "link is not the join of three four-point sets".into())
}

type Pick = fn(&VertexAudit) -> &Option<String>;

fn delta_checks(
    g: &Gamma,
    cc: &CubeComplex,
    config: &VerificationConfig,
    rec: &mut Recorder,
) -> Result<()> {
    let p = g.p() as u64;
    let census: Vec<u64> = cc.census().iter().map(|&c| c as u64).collect();

    if config.sample_homology > cc.count(0) {
        return Err(Error::Config(format!(
            "sample_homology {} exceeds the {} vertices",
            config.sample_homology,
            cc.count(0)
        )));
    }

    // Closed forms for a 4-regular Γ: type 1 links are 4⋆4⋆4, type 2 links
    // are Γ⋆4.
    let (t1, t2) = (16 * p.pow(3), 96 * p.pow(2));
    let expected = [
        t1 + t2,
        (12 * t1 + (4 * p + 4) * t2) / 2,
        (48 * t1 + 24 * p * t2) / 4,
        (64 * t1 + 32 * p * t2) / 8,
    ];
    rec.put(
        "delta.census",
        CheckRecord::new(
            census == expected,
            Some(format!("census {census:?}, expected {expected:?}")),
        )
        .count("vertices", census[0])
        .count("edges", census[1])
        .count("squares", census[2])
        .count("cubes", census[3]),
    );

    rec.put(
        "delta.face-closure",
        CheckRecord::new(
            cc.first_missing_face().is_none(),
            cc.first_missing_face()
                .map(|c| format!("cell {} has a missing face", cc.cell_tokens(&c))),
        ),
    );

    rec.put(
        "delta.connected",
        CheckRecord::new(cc.is_connected(), Some("1-skeleton is disconnected".into()))
            .count("vertices", census[0]),
    );

    let gamma_join = join(
        &g.to_complex().map_labels(|&x| JoinLabel::Gamma(x)),
        &SimplicialComplex::from_maximal((0..4).map(|i| [JoinLabel::Point(i)])),
    )?;
    let audits: Vec<VertexAudit> = cc
        .cells(0)
        .par_iter()
        .map(|v| audit_vertex(cc, g, &gamma_join, v))
        .collect();
    rec.lap("delta.links");

    let verts = cc.cells(0);
    let first_fail = |pick: Pick| {
        audits.iter().zip(verts).find_map(|(a, v)| {
            pick(a)
                .as_ref()
                .map(|w| format!("at {}: {w}", cc.cell_tokens(v)))
        })
    };
    let fails = |pick: Pick| audits.iter().filter(|a| pick(a).is_some()).count();
    let n1 = audits
        .iter()
        .filter(|a| a.kind == VertexType::Type1)
        .count();
    let n2 = audits.len() - n1;
    let typed = |r: CheckRecord| r.count("type1", n1).count("type2", n2);

    let sums: [u64; 3] = [0, 1, 2].map(|k| audits.iter().map(|a| a.f_vector[k] as u64).sum());
    let identities = [
        2 * census[1] == sums[0],
        4 * census[2] == sums[1],
        8 * census[3] == sums[2],
    ];
    rec.put(
        "delta.census-identities",
        CheckRecord::new(
            identities.iter().all(|&b| b),
            Some(format!(
                "2E={} vs {}, 4S={} vs {}, 8C={} vs {}",
                2 * census[1],
                sums[0],
                4 * census[2],
                sums[1],
                8 * census[3],
                sums[2]
            )),
        )
        .count("link_vertices", sums[0])
        .count("link_edges", sums[1])
        .count("link_triangles", sums[2]),
    );

    let pick_flag: Pick = |a| &a.flag;
    rec.put(
        "delta.link-flag",
        typed(CheckRecord::new(
            fails(pick_flag) == 0,
            first_fail(pick_flag),
        ))
        .count("failures", fails(pick_flag)),
    );
    let pick_join: Pick = |a| &a.join;
    rec.put(
        "delta.link-join",
        typed(CheckRecord::new(
            fails(pick_join) == 0,
            first_fail(pick_join),
        ))
        .count("failures", fails(pick_join)),
    );
    let pick_up: Pick = |a| &a.up;
    let pick_down: Pick = |a| &a.down;
    let updown_fails = fails(pick_up) + fails(pick_down);
    rec.put(
        "delta.updown-s2",
        typed(CheckRecord::new(
            updown_fails == 0,
            first_fail(pick_up).or_else(|| first_fail(pick_down)),
        ))
        .count("ascending_failures", fails(pick_up))
        .count("descending_failures", fails(pick_down))
        .count("links", 2 * audits.len()),
    );

    let profiles = vertex_profiles(cc);
    let audit = special_one_cells_with(cc, &profiles);
    rec.put(
        "delta.special-iff",
        CheckRecord::new(
            audit.violations.is_empty(),
            audit
                .violations
                .first()
                .map(|e| format!("edge {}", cc.cell_tokens(e))),
        )
        .count("type2_edges", audit.type2_edges)
        .count("special", audit.special.len())
        .count("violations", audit.violations.len()),
    );

    let special: FxHashSet<CubeCell> = audit.special.iter().copied().collect();
    let bad_cubes: Vec<(CubeCell, String)> = cc
        .cells(3)
        .par_iter()
        .filter_map(|c| cube_pattern_violation(cc, c, &profiles, &special).map(|w| (*c, w)))
        .collect();
    rec.put(
        "delta.cube-pattern",
        CheckRecord::new(
            bad_cubes.is_empty(),
            bad_cubes
                .first()
                .map(|(c, w)| format!("cube {}: {w}", cc.cell_tokens(c))),
        )
        .count("cubes", cc.count(3))
        .count("violations", bad_cubes.len()),
    );

    homology_sample(cc, g, config, rec);
    Ok(())
}

/// Seeded sample of vertex indices, sorted.
pub fn sample_vertices(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, n, k).into_vec();
    picked.sort_unstable();
    picked
}

fn homology_sample(cc: &CubeComplex, g: &Gamma, config: &VerificationConfig, rec: &mut Recorder) {
    let picked = sample_vertices(cc.count(0), config.sample_homology, config.seed);
    let type2_rank = 3 * (g.edge_count() - g.vertex_count() + 1);
    let results: Vec<Option<String>> = picked
        .par_iter()
        .map(|&i| {
            let v = &cc.cells(0)[i];
            let lk = cc.link(v).expect("vertex of the complex");
            let want = match cc.vertex_type(v).expect("vertex of the complex") {
                VertexType::Type1 => 27,
                VertexType::Type2 => type2_rank,
            };
            let h = reduced_homology(&lk);
            if !(h.is_torsion_free() && h.betti == [0, 0, want]) {
                return Some(format!(
                    "full link at {} has reduced homology {h}, expected (0, 0, Z^{want})",
                    cc.cell_tokens(v)
                ));
            }
            for dir in [Direction::Outgoing, Direction::Incoming] {
                let sub = lk.full_subcomplex(|l| l.direction == dir);
                let sphere = is_two_sphere(&sub).is_pass();
                let h = reduced_homology(&sub);
                if sphere && !h.is_homology_sphere_of_dim(2) {
                    return Some(format!(
                        "{dir:?} link at {} is a 2-sphere with reduced homology {h}",
                        cc.cell_tokens(v)
                    ));
                }
                if !sphere {
                    return Some(format!(
                        "{dir:?} link at {} failed the sphere test",
                        cc.cell_tokens(v)
                    ));
                }
            }
            None
        })
        .collect();
    let failures: Vec<&String> = results.iter().flatten().collect();
    rec.put(
        "delta.homology-sample",
        CheckRecord::new(failures.is_empty(), failures.first().map(|s| s.to_string()))
            .count("sampled", picked.len())
            .count("seed", config.seed)
            .count("failures", failures.len()),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_target_passes_at_eleven() {
        let r = run_verification(&VerificationConfig::new(Target::Gamma, 11)).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
        assert_eq!(r.checks.len(), 5);
        assert_eq!(r.checks["gamma.sign-cycles"].counts["cycle_len_pp"], 22);
    }

    #[test]
    fn x_target_passes_at_eleven() {
        let r = run_verification(&VerificationConfig::new(Target::X, 11)).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
        assert_eq!(r.checks["x.census"].counts["squares"], 88);
        assert_eq!(r.checks["x.link-no-square"].counts["empty_squares"], 0);
    }

    #[test]
    fn gamma_target_fails_at_seven_with_witness() {
        let r = run_verification(&VerificationConfig::new(Target::Gamma, 7)).unwrap();
        assert!(!r.all_pass());
        let c = &r.checks["gamma.no-short-cycles"];
        assert_eq!(c.status, Status::Fail);
        assert!(c.witness.as_ref().unwrap().starts_with("4-cycle "));
    }

    #[test]
    fn report_json_round_trips_and_is_sorted() {
        let r = run_verification(&VerificationConfig::new(Target::Gamma, 5)).unwrap();
        let text = r.to_json();
        let back = VerificationReport::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        let checks = text.find("\"checks\"").unwrap();
        let config = text.find("\"config\"").unwrap();
        let summary = text.find("\"summary\"").unwrap();
        assert!(checks < config && config < summary);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = VerificationConfig::new(Target::Gamma, 11);
        c.parallelism = 0;
        assert!(matches!(run_verification(&c), Err(Error::Config(_))));
        let c = VerificationConfig::new(Target::Gamma, 2);
        assert!(matches!(
            run_verification(&c),
            Err(Error::InvalidModulus(2))
        ));
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(sample_vertices(1000, 10, 0), sample_vertices(1000, 10, 0));
        assert_ne!(sample_vertices(1000, 10, 0), sample_vertices(1000, 10, 1));
        assert_eq!(sample_vertices(5, 5, 3), vec![0, 1, 2, 3, 4]);
    }
}
