"""Golden copy of the published decomposition table for Q(z, y, n).

Columns: y, z, n, Q, decomposition as printed, primes > z as printed.
Two rows print the product with "x" rather than "*"; kept verbatim.

The printed p > z column is not exhaustive: rows such as (5, 6) list 13 but
omit 7, and (7, 18) lists 2791 but omits 61. It is compared as a subset of
the prime factors exceeding z, and must contain the largest prime factor.

The table omits every z sharing a factor with y (z = 10, 15, 20, ... for
y = 5; z = 14, 21, 28 for y = 7). Nothing else is skipped, so the selection
rule is read as gcd(z, y) = 1.
"""

TABLE1 = (
    (5, 6, 3, 91, "7*13", "13"),
    (5, 7, 3, 109, "prime", "109"),
    (5, 8, 3, 129, "3*43", "43"),
    (5, 9, 3, 151, "prime", "151"),
    (5, 11, 3, 201, "3*67", "67"),
    (5, 12, 3, 229, "prime", "229"),
    (5, 13, 3, 259, "7*37", "37"),
    (5, 14, 3, 291, "3*97", "97"),
    (5, 16, 3, 361, "19*19", "19"),
    (5, 17, 3, 399, "3*7*19", "19"),
    (5, 18, 3, 439, "prime", "439"),
    (5, 19, 3, 481, "13*37", "37"),
    (5, 21, 3, 571, "prime", "571"),
    (5, 22, 3, 619, "prime", "619"),
    (5, 23, 3, 669, "3*223", "223"),
    (5, 24, 3, 721, "7*103", "103"),
    (5, 26, 3, 831, "3*277", "277"),
    (5, 27, 3, 889, "7*127", "127"),
    (5, 28, 3, 949, "13*73", "73"),
    (5, 29, 3, 1011, "3*337", "337"),
    (5, 31, 3, 1141, "7*163", "163"),
    (7, 8, 5, 15961, "11*1451", "1451"),
    (7, 9, 5, 21121, "prime", "21121"),
    (7, 10, 5, 27731, "11*2521", "2521"),
    (7, 11, 5, 36061, "prime", "36061"),
    (7, 12, 5, 46405, "5*9281", "9281"),
    (7, 13, 5, 59081, "11*41*131", "131, 41"),
    (7, 15, 5, 92821, "prime", "92821"),
    (7, 16, 5, 114641, "prime", "114641"),
    (7, 17, 5, 140305, "5*11*2551", "2551"),
    (7, 18, 5, 170251, "61*2791", "2791"),
    (7, 19, 5, 204941, "11*31*601", "601, 31"),
    (7, 20, 5, 244861, "prime", "244861"),
    (7, 22, 5, 342455, "5*68491", "68491"),
    (7, 23, 5, 401221, "71*5651", "71, 5651"),
    (7, 24, 5, 467401, "11 x 42491", "42491"),
    (7, 25, 5, 541601, "31 x 17471", "31, 17471"),
    (7, 26, 5, 624451, "prime", "624451"),
    (7, 27, 5, 716605, "5*251*571", "251, 571"),
    (7, 29, 5, 931561, "41*22721", "41, 22721"),
    (7, 30, 5, 1055791, "11*41*2341", "41, 2341"),
    (7, 31, 5, 1192181, "prime", "1192181"),
)


def parse_decomposition(text: str, value: int) -> list[int]:
    """Printed decomposition to a sorted prime multiset ("prime" means value itself)."""
    text = text.strip()
    if text == "prime":
        return [value]
    return sorted(int(tok) for tok in text.replace("x", "*").split("*"))


def parse_listed(text: str) -> set[int]:
    return {int(tok) for tok in text.split(",")}
