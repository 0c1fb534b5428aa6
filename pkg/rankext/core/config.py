from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field


class Settings(BaseSettings):
    """
    Application settings and configuration.
    All settings can be overridden by environment variables prefixed with RANKEXT_.
    """

    # Application
    PROJECT_NAME: str = "rankext"
    VERSION: str = "1.0.0"

    # Logging
    LOG_LEVEL: str = Field(default="WARNING")

    # Search caps
    MAX_SEARCH: int = Field(default=10**8, ge=1)
    MAX_CODEWORDS: int = Field(default=10**6, ge=1)
    MAX_ORDER: int = Field(default=10**6, ge=1)

    # Path calculus caps
    MAX_PATH_SUPPORT: int = Field(default=24, ge=1)
    MAX_CHAIN_SUPPORT: int = Field(default=16, ge=1)
    MAX_LISTED_CHAINS: int = Field(default=10**4, ge=0)

    # Vectorised search
    GL_BATCH_SIZE: int = Field(default=4096, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="RANKEXT_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )


# Create settings instance
settings = Settings()
