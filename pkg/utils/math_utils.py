# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------


def db_to_lin(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def dbm_to_watt(value_dbm: float) -> float:
    return db_to_lin(value_dbm - 30.0)
