from .config import LinkforgeConfig, approx_eps, get_config, reload_config

__all__ = ["LinkforgeConfig", "approx_eps", "get_config", "reload_config"]
