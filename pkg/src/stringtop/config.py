from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_prefix="STRINGTOP_")

    # Series windows (acceptance runs use [0, 60])
    WINDOW_LO: int = 0
    WINDOW_HI: int = 60

    # Brute-force Hochschild-degree ceiling
    HDEG_MAX: int = 4

    # Columns of the total complex kept by hcf_window
    COL_CAP: int = 12

    # Collapse certificate ranges
    R_MAX: int = 10
    L_MAX: int = 20

    # Sampled bicomplex / duality checks
    SAMPLE_COUNT: int = 100
    RANDOM_SEED: int = 20240101

    THREADS: int = 1

    LOG_LEVEL: str = "WARNING"


settings = Settings()
