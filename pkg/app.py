from flask import Flask, request, jsonify
import os
import logging
from engine_config.config import load_system
from whitefact.autos import factorize, verify_factorization
from whitefact.bass_serre_tree import distance, geodesic
from whitefact.exceptions import WhitefactException
from whitefact.factor_groups import cyclic_system
from whitefact.labellings import volume
from whitefact.reduction import reduce_to_base
from whitefact.serialization import (alpha_from_json, alpha_to_json, auto_from_json, factorization_from_json,
                                     factorization_to_json, moves_to_json, vertex_from_name, word_from_json)

# factor system served by the API
if 'WHITEFACT_SYSTEM' in os.environ:
    system = load_system(os.environ['WHITEFACT_SYSTEM'])
else:
    logging.warning('No factor system provided. Falling back to Z2 * Z2 * Z2...')
    system = cyclic_system(2, 2, 2)

app = Flask(__name__)


def json_payload(*keys: str):
    """
    Fetch the request payload

    :param keys: keys the payload must carry
    :return: the payload, or None if it is missing or incomplete
    """
    if request.content_type != 'application/json':
        logging.warning('Missing JSON payload')
        return None
    payload = request.get_json(silent=True)
    if not isinstance(payload, dict) or any(key not in payload for key in keys):
        logging.warning(f'Payload lacks one of {", ".join(keys)}')
        return None
    return payload


@app.route('/system', methods=['GET'])
def describe_system():
    return jsonify(system.describe()), 200


@app.route('/normalize', methods=['POST'])
def normalize():
    if (payload := json_payload('word')) is None:
        return 'JSON payload expected', 400
    try:
        return jsonify(word_from_json(system, payload['word']).to_json()), 200
    except WhitefactException as e:
        return e.message, 400


@app.route('/distance', methods=['POST'])
def tree_distance():
    """
    Distance and geodesic between two tree vertices

    :return: {"distance": d, "geodesic": [vertex names]}
    """
    if (payload := json_payload('p', 'q')) is None:
        return 'JSON payload expected', 400
    try:
        p = vertex_from_name(system, payload['p'])
        q = vertex_from_name(system, payload['q'])
    except WhitefactException as e:
        logging.warning(e.message)
        return e.message, 400
    return jsonify({'distance': distance(p, q), 'geodesic': [v.name for v in geodesic(p, q)]}), 200


@app.route('/volume', methods=['POST'])
def alpha_volume():
    if (payload := json_payload('alpha')) is None:
        return 'JSON payload expected', 400
    try:
        return jsonify({'volume': volume(alpha_from_json(system, payload))}), 200
    except WhitefactException as e:
        return e.message, 400


@app.route('/reduce', methods=['POST'])
def reduce():
    if (payload := json_payload('alpha')) is None:
        return 'JSON payload expected', 400
    try:
        final, moves = reduce_to_base(alpha_from_json(system, payload))
    except WhitefactException as e:
        logging.error(f'Reduction failed: {e.message}')
        return e.message, 400
    logging.info(f'Reduced to the base class in {len(moves)} moves')
    return jsonify({'final': alpha_to_json(final), 'moves': moves_to_json(moves)}), 200


@app.route('/factorize', methods=['POST'])
def factorize_auto():
    if (payload := json_payload('parts')) is None:
        return 'JSON payload expected', 400
    try:
        return jsonify(factorization_to_json(factorize(auto_from_json(system, payload)))), 200
    except WhitefactException as e:
        logging.error(f'Factorization failed: {e.message}')
        return e.message, 400


@app.route('/verify', methods=['POST'])
def verify():
    if (payload := json_payload('auto', 'factorization')) is None:
        return 'JSON payload expected', 400
    try:
        psi = auto_from_json(system, payload['auto'])
        factorization = factorization_from_json(system, payload['factorization'])
    except WhitefactException as e:
        return e.message, 400
    return jsonify({'valid': verify_factorization(psi, factorization)}), 200


if __name__ == '__main__':
    app.run()
