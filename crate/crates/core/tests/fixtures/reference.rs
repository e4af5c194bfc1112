// Generated by gen_reference.py (mpmath, 40 digits). Do not edit.

/// (kernel, FAE)
pub const FAE: &[(&str, f64)] = &[
    ("linear", 0.3453645130308473),
    ("keys", 0.28088045841625023),
    ("cubic3", 0.22990881274148904),
    ("optimal:1", 0.34145939119024275),
    ("optimal:2", 0.23012134190779066),
    ("optimal:3", 0.18570854113228981),
    ("optimal:6", 0.13030425703564876),
    ("truncsinc:3", 0.18327456180415692),
];

/// (L, optimal FAE) for L = 1..15
pub const OPTIMAL_FAE: &[(usize, f64)] = &[
    (1, 0.34145939119024275),
    (2, 0.23012134190779066),
    (3, 0.18570854113228981),
    (4, 0.16011668566994118),
    (5, 0.14290887460682869),
    (6, 0.13030425703564876),
    (7, 0.12055203154416497),
    (8, 0.11271341355036267),
    (9, 0.10623303385351857),
    (10, 0.10075823780102322),
    (11, 0.096052762743534529),
    (12, 0.091951523199648293),
    (13, 0.088335186043792246),
    (14, 0.085115042694891848),
    (15, 0.082223582972444796),
];

/// (kernel, t, F(h)(t))
pub const FOURIER: &[(&str, f64, f64)] = &[
    ("linear", 0.0, 1.0),
    ("linear", 0.25, 0.81056946913870217),
    ("linear", 0.5, 0.40528473456935109),
    ("linear", 0.75, 0.090063274348744686),
    ("linear", 1.0, 0.0),
    ("linear", 1.5, 0.045031637174372343),
    ("keys", 0.0, 1.0),
    ("keys", 0.25, 0.9390194910370087),
    ("keys", 0.5, 0.49276714822484809),
    ("keys", 0.75, 0.062558220968969671),
    ("keys", 1.0, 0.0),
    ("keys", 1.5, 0.0060835450398129394),
    ("cubic3", 0.0, 1.0),
    ("cubic3", 0.25, 0.99483725753223367),
    ("cubic3", 0.5, 0.49276714822484809),
    ("cubic3", 0.75, 0.0020888639017571204),
    ("cubic3", 1.0, 0.0),
    ("cubic3", 1.5, 0.0060835450398129394),
    ("optimal:1", 0.0, 1.0),
    ("optimal:1", 0.25, 0.8292154642256116),
    ("optimal:1", 0.5, 0.45141166679014031),
    ("optimal:1", 0.75, 0.12882029331026393),
    ("optimal:1", 1.0, 0.0),
    ("optimal:1", 1.5, 0.023558003093514764),
    ("optimal:2", 0.0, 1.0),
    ("optimal:2", 0.25, 1.1225831098543556),
    ("optimal:2", 0.5, 0.47496966988365508),
    ("optimal:2", 0.75, -0.069382708044775118),
    ("optimal:2", 1.0, 0.0),
    ("optimal:2", 1.5, 0.012404555174164894),
    ("optimal:3", 0.0, 1.0),
    ("optimal:3", 0.25, 1.0251151781388754),
    ("optimal:3", 0.5, 0.48320521749774713),
    ("optimal:3", 0.75, -0.020184360091706719),
    ("optimal:3", 1.0, 0.0),
    ("optimal:3", 1.5, 0.0083631341708537466),
];

/// (L, x, H_L(x))
pub const OPTIMAL_VALUES: &[(usize, f64, f64)] = &[
    (4, 0.1, 0.98668921054375338),
    (4, 0.5, 0.64642190879630472),
    (4, 0.9, 0.11234997224733919),
    (4, 1.25, -0.17310673449846236),
    (4, 2.5, 0.13712609090223964),
    (4, 3.75, -0.053064559010848218),
    (5, 0.1, 0.98167118396670277),
    (5, 0.5, 0.63031437545794713),
    (5, 0.9, 0.10733194567028858),
    (5, 1.25, -0.18453252550253271),
    (5, 2.5, 0.12101855756388205),
    (5, 3.75, -0.06449035001491857),
    (5, 4.5, 0.064430133353430376),
    (6, 0.1, 0.98499447863004226),
    (6, 0.5, 0.6410110290696677),
    (6, 0.9, 0.11065524033362807),
    (6, 1.25, -0.17695294902482285),
    (6, 2.5, 0.13171521117560262),
    (6, 3.75, -0.056910773537208706),
    (6, 4.5, 0.075126786965150948),
    (6, 5.999, -0.0001528056843094091),
];
