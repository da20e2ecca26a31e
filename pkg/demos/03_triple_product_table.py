"""The fourteen weight-1/2 quotients from the Jacobi triple product.

Each cell substitutes x, y (roots of unity times powers of q) into
prod (1 - x^2n)(1 + x^(2n-1) y)(1 + x^(2n-1)/y) = sum x^(n^2) y^n,
checks both sides agree, and compares with the expansion of the quotient.
"""

from etaforge.series import verify_table1

for cell in verify_table1(600):
    unit = "unit" if cell.scalar_is_unit else "non-unit"
    print(
        f"x={cell.row:7s} y={cell.col:8s} -> {str(cell.quotient):36s}"
        f" scalar {str(cell.scalar):8s} ({unit}), shift u^{cell.shift}"
    )
