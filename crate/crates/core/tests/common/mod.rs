//! Reference values computed offline at 60 to 120 significant digits and
//! frozen here.

#![allow(dead_code)]

/// `(x, exp(x^2) erfc(x))`.
pub const ERFCX: [(f64, f64); 41] = [
    (0.0, 1.0),
    (0.5, 0.61569034419292587487),
    (1.0, 0.42758357615580700441),
    (1.5, 0.32158541645431750235),
    (2.0, 0.25539567631050574387),
    (2.5, 0.21080636406114358065),
    (3.0, 0.17900115118138995042),
    (3.5, 0.1552936556088942974),
    (4.0, 0.13699945762506138989),
    (4.5, 0.12248480427384141755),
    (5.0, 0.11070463773306862637),
    (5.5, 0.10096221839949908823),
    (6.0, 0.092776567800538354389),
    (6.5, 0.085805670104894601778),
    (7.0, 0.07980005432915293349),
    (7.5, 0.074573693062876683005),
    (8.0, 0.069985166200880927723),
    (8.5, 0.065925122499980351741),
    (9.0, 0.062307724037774684147),
    (9.5, 0.059064678352563890854),
    (10.0, 0.056140992743822585858),
    (10.5, 0.053491899746564116726),
    (11.0, 0.05108059475808844371),
    (11.5, 0.048876546895982276458),
    (12.0, 0.04685422101489376262),
    (12.5, 0.044992099001027920845),
    (13.0, 0.043271921864609692663),
    (13.5, 0.041678096764088149221),
    (14.0, 0.040197228650218459306),
    (14.5, 0.038817747074647219383),
    (15.0, 0.037529606388505765746),
    (15.5, 0.036324043059485428598),
    (16.0, 0.035193377824930837566),
    (16.5, 0.034130853321913274415),
    (17.0, 0.0331304999997255367),
    (17.5, 0.032187024738230408088),
    (18.0, 0.031295717815905209886),
    (18.5, 0.030452374799774609709),
    (19.0, 0.029653230641262163525),
    (19.5, 0.028894903811938217647),
    (20.0, 0.028174348741051319319),
];

/// `(x, 3^(2/3) Ai(3^(-1/3) x))`, the density of `M_{1/3, 2/3}`.
pub const AIRY_DENSITY: [(f64, f64); 25] = [
    (0.0, 0.73848811162164831294),
    (0.25, 0.64576821942285570719),
    (0.5, 0.55633383867525532169),
    (0.75, 0.47262428530713118932),
    (1.0, 0.39623947970650259057),
    (1.25, 0.328061167704413062),
    (1.5, 0.26838912807998113923),
    (1.75, 0.21707792141303057767),
    (2.0, 0.17366397598105540331),
    (2.25, 0.1374766569285440275),
    (2.5, 0.10773017763507575435),
    (2.75, 0.083595686384364034709),
    (3.0, 0.064254604778390292421),
    (3.25, 0.048935385282703943896),
    (3.5, 0.03693641042406476662),
    (3.75, 0.027637904795660966663),
    (4.0, 0.020505597311995398461),
    (4.25, 0.015088563162185117089),
    (4.5, 0.011013279353839590267),
    (4.75, 0.007975508918799511716),
    (5.0, 0.005731230347769887201),
    (5.25, 0.0040874767459184258166),
    (5.5, 0.002893656060454701982),
    (5.75, 0.0020336922391331493293),
    (6.0, 0.0014191536402383276327),
];

/// `(rho, beta, z, phi(rho, beta, z))`.
pub const WRIGHT: [(f64, f64, f64, f64); 9] = [
    (-0.3, 0.7, -5.0, 0.0064665392145191341896),
    (-0.6, -0.5, -2.0, 0.23167788432199377556),
    (-0.8, 0.2, -3.0, 7.5197185445412349589e-9),
    (-0.9, 0.1, -2.0, 7.8193669162217504174e-17),
    (-0.5, 0.5, -15.0, 2.1006826890574942677e-25),
    (-0.25, 1.5, -8.0, 0.000073998103869435462775),
    (-0.7, 0.3, -4.5, 4.6484992957301874312e-9),
    (0.5, 1.0, 3.0, 14.781124457968376106),
    (-0.2, -1.3, -1.5, -0.0031979477781116832002),
];

/// `(alpha, beta, x, E_{alpha,beta}(x))`.
pub const ML: [(f64, f64, f64, f64); 8] = [
    (0.3, 1.0, -3.0, 0.21180263319643578203),
    (0.7, 0.8, -3.0, 0.07036711737220126443),
    (1.5, 1.0, 10.0, 69.165433808528796929),
    (0.5, 1.0, 5.0, 144009798674.66104041),
    (0.9, 1.2, -20.0, 0.017449224468190117297),
    (0.6, 0.6, -1.0, 0.17110228338391675211),
    (2.0, 1.0, -4.0, -0.416146836547142387),
    (0.8, 2.5, 7.0, 2865.6094999146213227),
];

pub const ALPHA_STAR: f64 = 0.7716678107820318;

/// `(beta, alpha*(beta))`.
pub const ALPHA_STAR_BETA: [(f64, f64); 4] = [
    (0.1, 0.8383935442845658),
    (0.2, 0.7790168706530952),
    (0.5, 0.7951039273172983),
    (0.9, 0.9513188991790671),
];

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Deterministic points of the two-dimensional Halton sequence.
pub fn halton(n: usize) -> Vec<(f64, f64)> {
    fn radical(mut i: usize, b: usize) -> f64 {
        let (mut f, mut r) = (1.0, 0.0);
        while i > 0 {
            f /= b as f64;
            r += f * (i % b) as f64;
            i /= b;
        }
        r
    }
    (1..=n).map(|i| (radical(i, 2), radical(i, 3))).collect()
}
