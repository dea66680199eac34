""" Contains a number of regex patterns for checking config files are valid """

# A positive whole number
POSITIVE_INT = r"^[1-9]\d*$"

# A whole number, zero included
NON_NEGATIVE_INT = r"^\d+$"

# A positive decimal such as 0.5, 1e-4 or 3
POSITIVE_FLOAT = r"^(?!0+(\.0*)?([eE][-+]?\d+)?$)\d+(\.\d*)?([eE][-+]?\d+)?$"

# A decimal in [0, 1]
UNIT_FLOAT = r"^(0(\.\d*)?|1(\.0*)?|\.\d+|\d(\.\d*)?[eE]-\d+)$"

# true or false
BOOLEAN = r"^(true|false)$"

# Comma-separated positive whole numbers, e.g. 3,3,3
POSITIVE_INT_LIST = r"^[1-9]\d*(,[1-9]\d*)*$"

# One of the two backbones
VARIANT = r"^(dense_pix|mix_pix)$"

# One of the two optimizers
OPTIMIZER = r"^(adam|sgd)$"

# Comma-separated seeds, e.g. 0,1,2
SEED_LIST = r"^\d+(,\d+)*$"

# Switches of the command line
ON_OFF = r"^(on|off)$"
