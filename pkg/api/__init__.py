# Blueprints for the compute and verification endpoints
