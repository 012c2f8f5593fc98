# Kummer's 24 solutions, transcribed row by row.
# (g, prefactor exponents {point: exponent}, (a', b', c'), argument)
KUMMER_24 = [
    # #1 at x=0
    ("[0+][1+][inf+]", {}, ("a", "b", "c"), "x"),
    ("[0+][1-][inf-]", {"1": "-a-b+c"}, ("c-a", "c-b", "c"), "x"),
    ("[0+][1+ inf+]", {"1": "-a"}, ("a", "c-b", "c"), "x/(x-1)"),
    ("[0+][1- inf-]", {"1": "-b"}, ("c-a", "b", "c"), "x/(x-1)"),
    # #2 at x=0
    ("[0-][1+][inf-]", {"0": "1-c"}, ("b-c+1", "a-c+1", "2-c"), "x"),
    ("[0-][1-][inf+]", {"0": "1-c", "1": "-a-b+c"}, ("1-b", "1-a", "2-c"), "x"),
    ("[0-][1- inf+]", {"0": "1-c", "1": "-a+c-1"}, ("1-b", "a-c+1", "2-c"), "x/(x-1)"),
    ("[0-][1+ inf-]", {"0": "1-c", "1": "-b+c-1"}, ("b-c+1", "1-a", "2-c"), "x/(x-1)"),
    # #1 at x=1
    ("[1+ 0+][inf+]", {}, ("a", "b", "a+b-c+1"), "1-x"),
    ("[1+ 0-][inf-]", {"0": "1-c"}, ("b-c+1", "a-c+1", "a+b-c+1"), "1-x"),
    ("[1+ 0+ inf+]", {"0": "-a"}, ("a", "a-c+1", "a+b-c+1"), "(x-1)/x"),
    ("[1+ 0- inf-]", {"0": "-b"}, ("b-c+1", "b", "a+b-c+1"), "(x-1)/x"),
    # #2 at x=1
    ("[1- 0+][inf-]", {"1": "-a-b+c"}, ("c-a", "c-b", "-a-b+c+1"), "1-x"),
    ("[1- 0-][inf+]", {"0": "1-c", "1": "-a-b+c"}, ("1-b", "1-a", "-a-b+c+1"), "1-x"),
    ("[1- 0- inf+]", {"0": "b-c", "1": "-a-b+c"}, ("1-b", "c-b", "-a-b+c+1"), "(x-1)/x"),
    ("[1- 0+ inf-]", {"0": "a-c", "1": "-a-b+c"}, ("c-a", "1-a", "-a-b+c+1"), "(x-1)/x"),
    # #1 at x=inf
    ("[inf+ 0+][1+]", {"0": "-a"}, ("a", "a-c+1", "a-b+1"), "1/x"),
    ("[inf+ 0-][1-]", {"0": "b-c", "1": "-a-b+c"}, ("1-b", "c-b", "a-b+1"), "1/x"),
    ("[inf+ 0+ 1+]", {"1": "-a"}, ("a", "c-b", "a-b+1"), "1/(1-x)"),
    ("[inf+ 0- 1-]", {"0": "1-c", "1": "-a+c-1"}, ("1-b", "a-c+1", "a-b+1"), "1/(1-x)"),
    # #2 at x=inf
    ("[inf- 0-][1+]", {"0": "-b"}, ("b-c+1", "b", "-a+b+1"), "1/x"),
    ("[inf- 0+][1-]", {"0": "a-c", "1": "-a-b+c"}, ("c-a", "1-a", "-a+b+1"), "1/x"),
    ("[inf- 0+ 1-]", {"1": "-b"}, ("c-a", "b", "-a+b+1"), "1/(1-x)"),
    ("[inf- 0- 1+]", {"0": "1-c", "1": "-b+c-1"}, ("b-c+1", "1-a", "-a+b+1"), "1/(1-x)"),
]

# Class of each block of four rows above.
KUMMER_CLASSES = [
    ("0", "first"),
    ("0", "second"),
    ("1", "first"),
    ("1", "second"),
    ("inf", "first"),
    ("inf", "second"),
]

# Quoted Heun transformations: g -> (a', q', alpha', beta', gamma', delta'),
# prefactor exponents, argument.
HEUN_QUOTED = {
    "euler": (
        "[1-][inf-]",
        ("a", "q-(delta-1)*gamma*a", "beta-delta+1", "alpha-delta+1", "gamma", "2-delta"),
        {"1": "1-delta"},
        "x",
    ),
    "pfaff": (
        "[1+ inf+]",
        ("a/(a-1)", "(-q+gamma*alpha*a)/(a-1)", "alpha", "alpha-delta+1", "gamma", "alpha-beta+1"),
        {"1": "-alpha"},
        "x/(x-1)",
    ),
    "order6": (
        "[1+ a- inf+]",
        ("1/(1-a)", "(q-gamma*alpha)/(a-1)", "-beta+gamma+delta", "alpha", "gamma", "alpha-beta+1"),
        {"a": "-alpha"},
        "x/(x-a)",
    ),
    "generator": (
        "[1- inf+][a-]",
        (
            "a/(a-1)",
            "(-q-gamma*((beta-gamma-delta)*a-alpha-beta+gamma+delta))/(a-1)",
            "-beta+gamma+1",
            "-beta+gamma+delta",
            "gamma",
            "alpha-beta+1",
        ),
        {"1": "beta-gamma-delta", "a": "-alpha-beta+gamma+delta"},
        "x/(x-1)",
    ),
    "homography": (
        "[1+ a+]",
        ("1/a", "q/a", "alpha", "beta", "gamma", "alpha+beta-gamma-delta+1"),
        {},
        "x/a",
    ),
}
