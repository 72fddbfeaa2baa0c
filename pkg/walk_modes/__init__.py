"""Walk modes for the antichain generator, one package per mode."""
