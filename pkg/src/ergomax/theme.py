"""
Colour theme for the ergomax terminal output.
Every Console in cli_ui is built with ERGOMAX_THEME; panels take their
border colour from BORDER_STYLES.
"""

from rich.theme import Theme

PALETTE = {
    "ink":     "#1B2A41",
    "steel":   "#4F6D7A",
    "sky":     "#7FB7E6",
    "teal":    "#2EC4B6",
    "mint":    "#9BE3B5",
    "amber":   "#F2A541",
    "crimson": "#E63946",
}

ERGOMAX_THEME = Theme(
    {
        "ergo.header":  f"bold {PALETTE['teal']}",
        "ergo.command": f"bold {PALETTE['sky']}",
        "ergo.key":     f"bold {PALETTE['teal']}",
        "ergo.value":   PALETTE["mint"],
        "ergo.muted":   f"dim {PALETTE['steel']}",
        # identities and run status
        "ergo.success": f"bold {PALETTE['mint']}",
        "ergo.warning": f"bold {PALETTE['amber']}",
        "ergo.error":   f"bold {PALETTE['crimson']}",
    }
)

# results / tables / failures, keyed by what the panel shows
BORDER_STYLES = {
    "report":  PALETTE["teal"],
    "table":   PALETTE["sky"],
    "error":   PALETTE["crimson"],
    "success": PALETTE["mint"],
    "header":  PALETTE["steel"],
}
